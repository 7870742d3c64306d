#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "wildfire/engine.hpp"

using namespace wildfire;

namespace {

Config small(GridKind kind, int n) {
    Config c;
    c.grid = kind;
    c.n = n;
    return c;
}

std::vector<std::uint64_t> range(std::uint64_t first, std::uint64_t last) {
    std::vector<std::uint64_t> v(last - first + 1);
    std::iota(v.begin(), v.end(), first);
    return v;
}

}  // namespace

TEST(Episode, FullBurnOnSmallGrid) {
    Config c = small(GridKind::rectangular, 5);
    c.fire = {1e-6, 1.0, 1.0, 0.0};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto log = run_episode(c, seed);
        EXPECT_EQ(log.termination, Termination::extinguished_or_burnt);
        EXPECT_EQ(log.records.back().census.n_afire, 0u);
        EXPECT_EQ(log.records.back().census.n_healthy, 0u) << "seed " << seed;
        EXPECT_EQ(log.records.back().census.n_burnt, 25u);
    }
}

TEST(Episode, SixteenStepsGiveInitialPlusSixteenRecords) {
    Config c = small(GridKind::hexagonal, 42);
    c.fire = {0.7, 1.0, 0.6, 1.0};
    c.tau = 16;
    const auto log = run_episode(c, 1);
    ASSERT_EQ(log.records.size(), 17u);
    EXPECT_EQ(log.length(), 16u);
    EXPECT_EQ(log.termination, Termination::tau_reached);
    EXPECT_EQ(log.records.front().census, (StateCensus{42 * 42 - 1, 1, 0, 0, 0}));
    EXPECT_EQ(log.final_state.t, 16u);
}

TEST(Episode, DeterministicForSameSeed) {
    Config c = small(GridKind::hexagonal, 20);
    c.agents = 4;
    c.fire = {0.5, 1.0, 0.6, 0.8};
    c.wind = Compass::N;
    const auto a = run_episode(c, 99);
    const auto b = run_episode(c, 99);
    EXPECT_EQ(a.records, b.records);
    EXPECT_EQ(a.final_state, b.final_state);
    EXPECT_EQ(a.termination, b.termination);
    EXPECT_NE(run_episode(c, 100).records, a.records);
}

TEST(Episode, RecordInvariants) {
    std::mt19937 gen(21);
    for (int trial = 0; trial < 30; ++trial) {
        Config c = small(trial % 2 ? GridKind::hexagonal : GridKind::rectangular, 5 + static_cast<int>(gen() % 15));
        c.fire.alpha0 = std::uniform_real_distribution<double>(0.0, 0.9)(gen);
        c.fire.beta = std::uniform_real_distribution<double>(0.1, 1.0)(gen);
        c.fire.zeta = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
        c.agents = static_cast<int>(gen() % 4);
        c.tau = static_cast<int>(gen() % 3) * 10;
        const auto log = run_episode(c, gen());
        const std::size_t cells = static_cast<std::size_t>(c.n) * static_cast<std::size_t>(c.n);
        for (std::size_t k = 0; k < log.records.size(); ++k) {
            const auto& r = log.records[k];
            EXPECT_EQ(r.t, k);
            EXPECT_EQ(r.census.total(), cells);
            EXPECT_EQ(r.agent_positions.size(), static_cast<std::size_t>(c.agents));
            EXPECT_EQ(r.cost, success_metric(r.census, r.t, c.cost));
            EXPECT_LE(r.retardant_count, static_cast<std::size_t>(c.agents) * micro_steps_per_update);
        }
        EXPECT_EQ(log.termination == Termination::extinguished_or_burnt, c.tau == 0 && log.records.back().census.n_afire == 0);
        if (c.tau > 0) EXPECT_EQ(log.length(), static_cast<std::uint64_t>(c.tau));
        else EXPECT_EQ(log.records.back().census.n_afire, 0u);
    }
}

TEST(Episode, InvalidConfigRejectedBeforeStepping) {
    Config c;
    c.fire.alpha0 = 1.5;
    int calls = 0;
    EpisodeHooks hooks;
    hooks.on_macro_step = [&](const ForestState&, std::span<const AgentState>) { ++calls; };
    EXPECT_THROW(run_episode(c, 0, hooks), std::exception);
    EXPECT_EQ(calls, 0);
}

TEST(Episode, HooksSeeEveryMacroStep) {
    Config c = small(GridKind::rectangular, 9);
    c.tau = 5;
    c.agents = 2;
    int macro = 0, micro = 0;
    EpisodeHooks hooks;
    hooks.on_macro_step = [&](const ForestState& f, std::span<const AgentState> a) {
        EXPECT_EQ(f.t, static_cast<std::uint64_t>(macro));
        EXPECT_EQ(a.size(), 2u);
        ++macro;
    };
    hooks.on_micro_step = [&](const MicroStepTrace&) { ++micro; };
    run_episode(c, 3, hooks);
    EXPECT_EQ(macro, 6);
    EXPECT_EQ(micro, 5 * micro_steps_per_update);
}

TEST(Episode, StepLimitStopsFireThatNeverBurnsOut) {
    Config c = small(GridKind::rectangular, 1);
    c.fire = {0.5, 1.0, 0.0, 0.0};
    const auto log = run_episode(c, 0);
    EXPECT_EQ(log.termination, Termination::step_limit);
    EXPECT_EQ(log.length(), max_macro_steps);
    EXPECT_EQ(log.records.back().census.n_afire, 1u);
}

TEST(Batch, SingleSeedMeanIsThatEpisode) {
    Config c = small(GridKind::hexagonal, 15);
    const std::vector<std::uint64_t> seeds{7};
    const auto report = run_batch(c, seeds);
    ASSERT_EQ(report.episodes.size(), 1u);
    EXPECT_EQ(report.mean_cost, run_episode(c, 7).final_cost());
    EXPECT_EQ(report.stddev_cost, 0.0);
    EXPECT_EQ(report.min_cost, report.max_cost);
}

TEST(Batch, RepeatedSeedHasZeroVariance) {
    Config c = small(GridKind::rectangular, 12);
    const std::vector<std::uint64_t> seeds(6, 42);
    const auto report = run_batch(c, seeds, 3);
    EXPECT_EQ(report.stddev_cost, 0.0);
    for (const auto& e : report.episodes) EXPECT_EQ(e, report.episodes.front());
}

TEST(Batch, EmptySeedListIsAnError) {
    EXPECT_THROW(run_batch(Config{}, {}), std::invalid_argument);
}

TEST(Batch, StatisticsRecomputableFromEpisodes) {
    Config c = small(GridKind::hexagonal, 12);
    c.fire.alpha0 = 0.5;
    const auto seeds = range(1, 25);
    const auto report = run_batch(c, seeds, 2);
    ASSERT_EQ(report.episodes.size(), seeds.size());
    double sum = 0.0, len = 0.0;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        EXPECT_EQ(report.episodes[k].seed, seeds[k]);
        sum += report.episodes[k].final_cost;
        len += static_cast<double>(report.episodes[k].length);
    }
    const double mean = sum / 25.0;
    double ss = 0.0;
    for (const auto& e : report.episodes) ss += (e.final_cost - mean) * (e.final_cost - mean);
    EXPECT_NEAR(report.mean_cost, mean, 1e-9);
    EXPECT_NEAR(report.stddev_cost, std::sqrt(ss / 24.0), 1e-9);
    EXPECT_NEAR(report.mean_length, len / 25.0, 1e-12);
    const auto [lo, hi] = std::minmax_element(report.episodes.begin(), report.episodes.end(),
                                              [](const auto& a, const auto& b) { return a.final_cost < b.final_cost; });
    EXPECT_EQ(report.min_cost, lo->final_cost);
    EXPECT_EQ(report.max_cost, hi->final_cost);
}

TEST(Batch, PermutingSeedsPermutesResults) {
    Config c = small(GridKind::rectangular, 10);
    c.agents = 3;
    auto seeds = range(1, 16);
    const auto forward = run_batch(c, seeds, 4);
    std::mt19937 gen(5);
    std::shuffle(seeds.begin(), seeds.end(), gen);
    const auto shuffled = run_batch(c, seeds, 3);
    for (std::size_t k = 0; k < seeds.size(); ++k) EXPECT_EQ(shuffled.episodes[k], forward.episodes[seeds[k] - 1]);
}

TEST(Batch, MasterSeedChangesEpisodes) {
    Config a = small(GridKind::hexagonal, 12);
    Config b = a;
    b.seed = 1;
    EXPECT_NE(run_episode(a, 5).records, run_episode(b, 5).records);
}
