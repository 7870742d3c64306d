#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "wildfire/agent_system.hpp"
#include "wildfire/strategy.hpp"

using namespace wildfire;

namespace {

std::shared_ptr<const Topology> grid(GridKind kind, int n) { return std::make_shared<const Topology>(kind, n); }

/// Observation for an agent standing at `at` in `forest`, with x(0) = `x0`.
Observation observe(const ForestState& forest, CellIndex at, bool memory, const ForestState& x0) {
    AgentState a{0, at, memory};
    return sense(a, forest, std::make_shared<const AgentBoard>(),
                 std::make_shared<const std::vector<CellState>>(x0.cells));
}

double angle_about(Vec2 p, Vec2 c) { return std::atan2(p.y - c.y, p.x - c.x); }

/// Wraps another strategy and records every observation and decision.
class Recorder final : public Strategy {
public:
    explicit Recorder(std::unique_ptr<Strategy> inner) : inner_(std::move(inner)) {}
    void on_episode_start(std::span<const CellState> x0, const Topology& topo) override {
        inner_->on_episode_start(x0, topo);
    }
    StrategyDecision decide(const Observation& obs, const Topology& topo) override {
        const auto d = inner_->decide(obs, topo);
        log->emplace_back(obs, d);
        return d;
    }
    std::shared_ptr<std::vector<std::pair<Observation, StrategyDecision>>> log =
        std::make_shared<std::vector<std::pair<Observation, StrategyDecision>>>();

private:
    std::unique_ptr<Strategy> inner_;
};

class Constant final : public Strategy {
public:
    explicit Constant(StrategyDecision d) : d_(d) {}
    StrategyDecision decide(const Observation&, const Topology&) override { return d_; }

private:
    StrategyDecision d_;
};

}  // namespace

TEST(Heuristic, ApproachMovesTowardSource) {
    const auto topo = grid(GridKind::hexagonal, 42);
    const auto x0 = ignite_center(ForestState::uniform(topo));
    const Vec2 source = source_centroid(x0.cells, *topo);
    EXPECT_EQ(source, topo->center(center_cell(*topo)));

    const auto obs = observe(x0, {0, 0}, false, x0);
    ASSERT_FALSE(obs.memory);
    const auto d = heuristic_decide(obs, *topo, source);
    EXPECT_EQ(d.action, ControlAction::nop);
    const auto next = topo->neighbor_at(0, static_cast<std::size_t>(d.move_slot));
    ASSERT_NE(next, Topology::no_cell);
    EXPECT_LT(norm(topo->center(static_cast<std::size_t>(next)) - source), norm(topo->center(0) - source));
}

TEST(Heuristic, ApproachDistanceStrictlyDecreases) {
    for (auto kind : {GridKind::rectangular, GridKind::hexagonal}) {
        const auto topo = grid(kind, 31);
        const auto x0 = ignite_center(ForestState::uniform(topo));
        const Vec2 source = source_centroid(x0.cells, *topo);
        for (const auto start : topo->boundary()) {
            CellIndex at = topo->cell(start);
            double dist = norm(topo->center(start) - source);
            for (;;) {
                const auto obs = observe(x0, at, false, x0);
                if (obs.memory) break;
                const auto d = heuristic_decide(obs, *topo, source);
                const auto next = topo->neighbor_at(topo->linear(at), static_cast<std::size_t>(d.move_slot));
                ASSERT_NE(next, Topology::no_cell);
                const double nd = norm(topo->center(static_cast<std::size_t>(next)) - source);
                ASSERT_LT(nd, dist);
                dist = nd;
                at = topo->cell(static_cast<std::size_t>(next));
            }
            EXPECT_LE(dist, 2.0);
        }
    }
}

TEST(Heuristic, RetardantWhenCentreBurning) {
    const auto topo = grid(GridKind::rectangular, 5);
    auto forest = ForestState::uniform(topo);
    const auto x0 = ignite_center(forest);
    forest.at({1, 1}) = CellState::afire;
    EXPECT_EQ(heuristic_decide(observe(forest, {1, 1}, true, x0), *topo, {2, 2}).action, ControlAction::retardant);
    EXPECT_EQ(heuristic_decide(observe(forest, {1, 2}, true, x0), *topo, {2, 2}).action, ControlAction::nop);
}

TEST(Heuristic, FrontFollowIsCounterclockwise) {
    // 5x5 fixture: burnt source at (2,2), agent at (2,1) with fire to its east.
    const auto topo = grid(GridKind::rectangular, 5);
    const auto x0 = ignite_center(ForestState::uniform(topo));
    auto forest = ForestState::uniform(topo);
    forest.at({2, 2}) = CellState::burnt;
    const Vec2 source = source_centroid(x0.cells, *topo);
    const auto obs = observe(forest, {2, 1}, true, x0);
    const auto d = heuristic_decide(obs, *topo, source);

    const auto next = topo->cell(static_cast<std::size_t>(topo->neighbor_at(topo->linear({2, 1}), static_cast<std::size_t>(d.move_slot))));
    EXPECT_LT(next.row, 2);  // southward, i.e. counterclockwise seen from the west
    const double before = angle_about(topo->cell_center({2, 1}), source);
    const double after = angle_about(topo->cell_center(next), source);
    EXPECT_GT(std::remainder(after - before, 2 * std::numbers::pi), 0.0);
    EXPECT_EQ(next, (CellIndex{1, 2}));  // SE: largest step that keeps (2,2) in view
}

TEST(Heuristic, PrefersBurningNeighbour) {
    const auto topo = grid(GridKind::rectangular, 5);
    const auto x0 = ignite_center(ForestState::uniform(topo));
    auto forest = ForestState::uniform(topo);
    forest.at({2, 2}) = CellState::burnt;
    forest.at({3, 1}) = CellState::afire;
    const auto d = heuristic_decide(observe(forest, {2, 1}, true, x0), *topo, source_centroid(x0.cells, *topo));
    EXPECT_EQ(d.move_slot, 2);  // N, onto (3,1)
}

TEST(Heuristic, CandidateOnSourceCountsAsNoProgress) {
    const auto topo = grid(GridKind::rectangular, 5);
    const auto x0 = ignite_center(ForestState::uniform(topo));
    auto forest = ForestState::uniform(topo);
    forest.at({2, 2}) = CellState::burnt;
    // From (1,1) the source cell (2,2) would score 3pi/4 with atan2(0,0) = 0;
    // the best real step is E to (1,2) with pi/4.
    const auto d = heuristic_decide(observe(forest, {1, 1}, true, x0), *topo, source_centroid(x0.cells, *topo));
    EXPECT_EQ(d.move_slot, 0);
}

TEST(Heuristic, FallsBackToApproachWithoutFireInView) {
    const auto topo = grid(GridKind::rectangular, 9);
    const auto x0 = ignite_center(ForestState::uniform(topo));
    const auto forest = ForestState::uniform(topo);
    const Vec2 source = source_centroid(x0.cells, *topo);
    const auto follow = heuristic_decide(observe(forest, {0, 0}, true, x0), *topo, source);
    const auto approach = heuristic_decide(observe(forest, {0, 0}, false, x0), *topo, source);
    EXPECT_EQ(follow, approach);
}

TEST(Heuristic, RetardantDisciplineOnRandomObservations) {
    std::mt19937 gen(4);
    for (auto kind : {GridKind::rectangular, GridKind::hexagonal}) {
        const auto topo = grid(kind, 7);
        const auto x0 = ignite_center(ForestState::uniform(topo));
        for (int trial = 0; trial < 500; ++trial) {
            auto forest = ForestState::uniform(topo);
            for (auto& c : forest.cells) c = static_cast<CellState>(gen() % cell_state_count);
            const auto at = topo->cell(gen() % topo->size());
            const auto obs = observe(forest, at, gen() % 2 == 0, x0);
            const auto d = heuristic_decide(obs, *topo, source_centroid(x0.cells, *topo));
            EXPECT_EQ(d.action == ControlAction::retardant, forest.at(at) == CellState::afire);
            EXPECT_NE(topo->neighbor_at(topo->linear(at), static_cast<std::size_t>(d.move_slot)), Topology::no_cell);
        }
    }
}

TEST(Heuristic, PhaseIsMonotoneAndDecisionsArePure) {
    const auto topo = grid(GridKind::hexagonal, 21);
    auto forest = ignite_center(ForestState::uniform(topo));
    auto recorder = std::make_unique<Recorder>(std::make_unique<HeuristicStrategy>());
    const auto log = recorder->log;
    AgentSystem sys(place_agents(*topo, 6), std::move(recorder));
    std::vector<bool> memory(6, false);
    sys.set_observer([&](const MicroStepTrace& tr) {
        for (const auto& a : tr.agents) {
            EXPECT_TRUE(a.memory || !memory[a.id]) << "agent " << a.id;
            memory[a.id] = a.memory;
        }
    });
    sys.start(forest);
    FireStepper stepper(topo->kind(), Wind::calm(), {0.5, 1.0, 0.6, 1.0});
    Rng rng(11);
    for (int k = 0; k < 12; ++k) macro_step(sys, forest, stepper, rng);
    EXPECT_TRUE(std::any_of(memory.begin(), memory.end(), [](bool m) { return m; }));

    ASSERT_FALSE(log->empty());
    HeuristicStrategy fresh;
    for (const auto& [obs, decision] : *log) EXPECT_EQ(fresh.decide(obs, *topo), decision);
}

TEST(Registry, BuiltinsAndCaseInsensitivity) {
    auto& reg = StrategyRegistry::instance();
    EXPECT_TRUE(reg.contains("haksar"));
    EXPECT_TRUE(reg.contains("Haksar"));
    EXPECT_TRUE(reg.contains("USER"));
    EXPECT_NE(dynamic_cast<HeuristicStrategy*>(reg.create("Haksar").get()), nullptr);
    EXPECT_THROW(reg.create("nope"), std::invalid_argument);
}

TEST(Registry, UserStrategyDispatch) {
    auto& reg = StrategyRegistry::instance();
    EXPECT_NE(dynamic_cast<UserStrategy*>(reg.create("user").get()), nullptr);
    register_user_strategy([] { return std::make_unique<Constant>(StrategyDecision{3, ControlAction::nop}); });
    const auto topo = grid(GridKind::rectangular, 3);
    EXPECT_EQ(reg.create("user")->decide({}, *topo), (StrategyDecision{3, ControlAction::nop}));
    register_user_strategy([] { return std::make_unique<UserStrategy>(); });
}

TEST(UserStrategy, TemplateMovesToFirstFreeSlotWithoutRetardant) {
    const auto topo = grid(GridKind::rectangular, 4);
    const auto forest = ForestState::uniform(topo, CellState::afire);
    UserStrategy s;
    const auto d = s.decide(observe(forest, {3, 3}, true, forest), *topo);
    EXPECT_EQ(d.action, ControlAction::nop);
    EXPECT_EQ(d.move_slot, 4);  // W: first in-grid slot from the top-right corner
}

TEST(UserStrategy, IllegalSlotFallsBackAndIsLogged) {
    const auto topo = grid(GridKind::rectangular, 5);
    auto forest = ForestState::uniform(topo);
    AgentSystem sys({{0, {2, 2}, false}}, std::make_unique<Constant>(StrategyDecision{17, ControlAction::nop}));
    sys.start(forest);
    Rng rng(1);
    sys.micro_step(forest, {0.5, 1.0, 0.5, 1.0}, rng);
    ASSERT_EQ(sys.deviations().size(), 1u);
    EXPECT_EQ(sys.deviations()[0].kind, Deviation::Kind::illegal_direction);
    EXPECT_EQ(sys.agents()[0].position, canonical_order(*topo, {2, 2}).front());
}

TEST(UserStrategy, ConstantNopMatchesZeroAgents) {
    const auto topo = grid(GridKind::hexagonal, 15);
    const FireParams p{0.5, 1.0, 0.4, 1.0};
    auto with_agents = ignite_center(ForestState::uniform(topo));
    auto without = with_agents;
    AgentSystem busy(place_agents(*topo, 5), std::make_unique<Constant>(StrategyDecision{1, ControlAction::nop}));
    AgentSystem idle({}, nullptr);
    busy.start(with_agents);
    idle.start(without);
    FireStepper s1(topo->kind(), Wind::calm(), p), s2(topo->kind(), Wind::calm(), p);
    Rng r1(8), r2(8);
    for (int k = 0; k < 15; ++k) {
        macro_step(busy, with_agents, s1, r1);
        macro_step(idle, without, s2, r2);
        ASSERT_EQ(with_agents, without) << "t=" << k;
    }
}
