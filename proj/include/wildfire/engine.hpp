#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <vector>

#include "agent_system.hpp"
#include "config.hpp"
#include "fire.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "strategy.hpp"

namespace wildfire {

/// Hard ceiling for tau = 0 episodes that never burn out (beta = 0).
inline constexpr std::uint64_t max_macro_steps = 100000;

struct StepRecord {
    std::uint64_t t = 0;
    StateCensus census;
    double cost = 0.0;
    std::vector<CellIndex> agent_positions;
    std::size_t retardant_count = 0;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

enum class Termination : std::uint8_t { tau_reached, extinguished_or_burnt, step_limit };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::tau_reached: return "tau-reached";
        case Termination::extinguished_or_burnt: return "extinguished-or-burnt";
        case Termination::step_limit: return "step-limit";
    }
    return "?";
}

struct EpisodeLog {
    Config config;
    std::uint64_t seed = 0;
    std::vector<StepRecord> records;  // initial state first, then one per macro-step
    Termination termination = Termination::tau_reached;
    std::vector<Deviation> deviations;
    ForestState final_state;

    std::uint64_t length() const noexcept { return records.empty() ? 0 : records.size() - 1; }
    double final_cost() const noexcept { return records.empty() ? 0.0 : records.back().cost; }
};

/// Optional callbacks into a running episode.
struct EpisodeHooks {
    std::function<void(const ForestState&, std::span<const AgentState>)> on_macro_step;  // also fires for x(0)
    MicroStepObserver on_micro_step;
};

inline std::unique_ptr<Strategy> make_strategy(AgentMode mode) {
    return StrategyRegistry::instance().create(mode == AgentMode::haksar ? "haksar" : "user");
}

/// One seeded episode: ignite the centre, place agents, iterate macro-steps.
inline EpisodeLog run_episode(const Config& config, std::uint64_t seed, const EpisodeHooks& hooks = {}) {
    config.validate();
    const Wind wind = config.wind_vector();
    auto topo = std::make_shared<const Topology>(config.grid, config.n);
    ForestState forest = ignite_center(ForestState::uniform(topo));
    FireStepper stepper(topo->kind(), wind, config.fire);
    AgentSystem agents(place_agents(*topo, static_cast<std::size_t>(config.agents)),
                       config.agents > 0 ? make_strategy(config.agent_mode) : nullptr);
    if (hooks.on_micro_step) agents.set_observer(hooks.on_micro_step);
    agents.start(forest);
    Rng rng = Rng::for_episode(config.seed, seed);

    EpisodeLog log;
    log.config = config;
    log.seed = seed;
    auto record = [&](std::size_t marked) {
        StepRecord r;
        r.t = forest.t;
        r.census = calc_statistic(forest);
        r.cost = success_metric(r.census, forest.t, config.cost);
        for (const auto& a : agents.agents()) r.agent_positions.push_back(a.position);
        r.retardant_count = marked;
        log.records.push_back(std::move(r));
        if (hooks.on_macro_step) hooks.on_macro_step(forest, agents.agents());
    };
    record(0);

    const auto tau = static_cast<std::uint64_t>(config.tau);
    while (true) {
        if (tau > 0 && forest.t >= tau) {
            log.termination = Termination::tau_reached;
            break;
        }
        if (tau == 0 && log.records.back().census.n_afire == 0) {
            log.termination = Termination::extinguished_or_burnt;
            break;
        }
        if (tau == 0 && forest.t >= max_macro_steps) {
            log.termination = Termination::step_limit;
            break;
        }
        record(macro_step(agents, forest, stepper, rng));
    }
    log.deviations.assign(agents.deviations().begin(), agents.deviations().end());
    log.final_state = std::move(forest);
    return log;
}

/// Runs fn(run_episode(config, seed)) for every seed, possibly in parallel.
/// Results come back in the order of `seeds`.
template <typename Fn>
auto map_batch(const Config& config, std::span<const std::uint64_t> seeds, Fn&& fn, unsigned threads = 0)
    -> std::vector<std::invoke_result_t<Fn&, const EpisodeLog&>> {
    using Result = std::invoke_result_t<Fn&, const EpisodeLog&>;
    if (seeds.empty()) throw std::invalid_argument("batch needs at least one seed");
    config.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(seeds.size()));

    std::vector<std::optional<Result>> slots(seeds.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
                slots[i].emplace(fn(run_episode(config, seeds[i])));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    std::vector<Result> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

struct EpisodeSummary {
    std::uint64_t seed = 0;
    double final_cost = 0.0;
    std::uint64_t length = 0;
    StateCensus final_census;

    friend bool operator==(const EpisodeSummary&, const EpisodeSummary&) = default;
};

/// Aggregate over a seed sweep; the statistics derive from `episodes` alone.
struct BatchReport {
    std::vector<EpisodeSummary> episodes;
    double mean_cost = 0.0;
    double stddev_cost = 0.0;  // sample (n - 1) standard deviation, 0 for one episode
    double min_cost = 0.0;
    double max_cost = 0.0;
    double mean_length = 0.0;

    static BatchReport from(std::vector<EpisodeSummary> episodes) {
        BatchReport r;
        r.episodes = std::move(episodes);
        if (r.episodes.empty()) return r;
        const double count = static_cast<double>(r.episodes.size());
        double sum = 0.0;
        double len = 0.0;
        r.min_cost = r.max_cost = r.episodes.front().final_cost;
        for (const auto& e : r.episodes) {
            sum += e.final_cost;
            len += static_cast<double>(e.length);
            r.min_cost = std::min(r.min_cost, e.final_cost);
            r.max_cost = std::max(r.max_cost, e.final_cost);
        }
        r.mean_cost = sum / count;
        r.mean_length = len / count;
        if (r.episodes.size() > 1) {
            double ss = 0.0;
            for (const auto& e : r.episodes) ss += (e.final_cost - r.mean_cost) * (e.final_cost - r.mean_cost);
            r.stddev_cost = std::sqrt(ss / (count - 1.0));
        }
        return r;
    }
};

inline EpisodeSummary summarize(const EpisodeLog& log) {
    return {log.seed, log.final_cost(), log.length(), log.records.back().census};
}

inline BatchReport run_batch(const Config& config, std::span<const std::uint64_t> seeds, unsigned threads = 0) {
    return BatchReport::from(map_batch(config, seeds, summarize, threads));
}

}  // namespace wildfire
