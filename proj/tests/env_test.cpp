#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "marl/env.hpp"
#include "test_util.hpp"

using namespace marl;

namespace {

EnvConfig default_cfg() { return EnvConfig{}; }

bool in_bounds(const Cell& c, const EnvConfig& cfg) {
    return c.x >= 0 && c.x < cfg.grid_size && c.y >= 0 && c.y < cfg.grid_size;
}

}  // namespace

TEST_CASE("generate_level produces distinct in-bounds cells") {
    EnvConfig cfg = default_cfg();
    Rng rng(42);
    Level level = generate_level(rng, LevelType::Unrestricted, cfg);
    REQUIRE(level.agent_starts.size() == 3);
    REQUIRE(level.landmarks.size() == 3);
    std::set<std::pair<int, int>> cells;
    for (const Cell& c : level.agent_starts) {
        CHECK(in_bounds(c, cfg));
        cells.insert({c.x, c.y});
    }
    for (const Cell& c : level.landmarks) {
        CHECK(in_bounds(c, cfg));
        cells.insert({c.x, c.y});
    }
    CHECK(cells.size() == 6);
}

TEST_CASE("generate_level is deterministic for equal seeds") {
    EnvConfig cfg = default_cfg();
    for (uint64_t seed : {1ull, 7ull, 12345ull}) {
        Rng a(seed), b(seed);
        CHECK(generate_level(a, LevelType::Type2, cfg) == generate_level(b, LevelType::Type2, cfg));
    }
}

TEST_CASE("restricted level types respect their regions over 10000 draws") {
    EnvConfig cfg = default_cfg();
    const auto regions = cfg.regions();
    Rng rng(99);
    for (int type_idx : {1, 2, 3}) {
        const RegionPair& rp = regions[type_idx];
        for (int i = 0; i < 10000; ++i) {
            Level level = generate_level(rng, static_cast<LevelType>(type_idx), cfg);
            for (const Cell& c : level.agent_starts) REQUIRE(rp.agents.contains(c));
            for (const Cell& c : level.landmarks) REQUIRE(rp.landmarks.contains(c));
        }
    }
}

TEST_CASE("step clamps moves at the grid edge") {
    EnvConfig cfg = default_cfg();
    Level level;
    level.agent_starts = {{0, 5}, {9, 9}, {5, 0}};
    level.landmarks = {{1, 1}, {2, 2}, {3, 3}};
    GridState s = reset(level);
    StepOutcome out = step(s, {Action::Left, Action::Up, Action::Down}, cfg);
    CHECK(s.agents[0] == Cell{0, 5});
    CHECK(s.agents[1] == Cell{9, 9});
    CHECK(s.agents[2] == Cell{5, 0});
    CHECK(s.t == 1);
    CHECK_FALSE(out.done);
}

TEST_CASE("full coverage ends the episode when coverage termination is on") {
    EnvConfig cfg = default_cfg();
    cfg.terminate_on_coverage = true;
    Level level;
    level.agent_starts = {{1, 0}, {2, 2}, {5, 5}};
    level.landmarks = {{0, 0}, {2, 2}, {5, 5}};
    GridState s = reset(level);
    StepOutcome out = step(s, {Action::Left, Action::DoNothing, Action::DoNothing}, cfg);
    CHECK(out.reward == doctest::Approx(1.0));
    CHECK(out.done);
    CHECK(s.done);
    CHECK_THROWS_AS(step(s, {Action::Left, Action::Left, Action::Left}, cfg), std::logic_error);
}

TEST_CASE("episode truncates at the horizon without coverage") {
    EnvConfig cfg = default_cfg();
    Level level;
    level.agent_starts = {{0, 0}, {0, 1}, {0, 2}};
    level.landmarks = {{9, 9}, {9, 8}, {9, 7}};
    GridState s = reset(level);
    s.t = cfg.t_max - 1;
    StepOutcome out = step(s, {Action::DoNothing, Action::DoNothing, Action::DoNothing}, cfg);
    CHECK(out.reward == doctest::Approx(0.0));
    CHECK(out.done);
}

TEST_CASE("coverage_reward counts landmarks, not agents") {
    EnvConfig cfg = default_cfg();
    Level level;
    level.agent_starts = {{4, 4}, {5, 5}, {6, 6}};
    level.landmarks = {{0, 0}, {1, 1}, {2, 2}};
    GridState s = reset(level);

    CHECK(coverage_reward(s) == doctest::Approx(0.0));

    s.agents = {{0, 0}, {1, 1}, {9, 9}};
    CHECK(coverage_reward(s) == doctest::Approx(2.0 / 3.0));

    s.agents = {{0, 0}, {0, 0}, {9, 9}};
    CHECK(coverage_reward(s) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("coverage_reward is invariant to relabeling agents and landmarks") {
    EnvConfig cfg = default_cfg();
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Level level = generate_level(rng, LevelType::Unrestricted, cfg);
        GridState s = reset(level);
        // random walk a few steps to diversify
        for (int k = 0; k < 4; ++k) {
            JointAction a(cfg.n_agents);
            for (int i = 0; i < cfg.n_agents; ++i)
                a[i] = static_cast<Action>(rng.uniform_int(kNumActions));
            step(s, a, cfg);
        }
        const float base = coverage_reward(s);
        GridState perm = s;
        std::swap(perm.agents[0], perm.agents[2]);
        CHECK(coverage_reward(perm) == base);
        perm = s;
        std::swap(perm.landmarks[1], perm.landmarks[2]);
        CHECK(coverage_reward(perm) == base);
    }
}

TEST_CASE("observe normalises relative geometry and timestep") {
    EnvConfig cfg = default_cfg();
    Level level;
    level.agent_starts = {{0, 0}, {9, 9}, {3, 3}};
    level.landmarks = {{0, 0}, {4, 7}, {8, 1}};
    GridState s = reset(level);

    Observation o = observe(s, 0, cfg);
    REQUIRE(o.size() == 11);
    CHECK(o[0] == doctest::Approx(1.0));   // agent 1 dx
    CHECK(o[1] == doctest::Approx(1.0));   // agent 1 dy
    CHECK(o[4] == doctest::Approx(0.0));   // landmark 0 dx (co-located)
    CHECK(o[5] == doctest::Approx(0.0));
    CHECK(o[10] == doctest::Approx(-1.0)); // t = 0
    for (float v : o) {
        CHECK(v >= -1.0f);
        CHECK(v <= 1.0f);
    }
}

TEST_CASE("observe depends only on relative geometry") {
    EnvConfig cfg = default_cfg();
    Level level;
    level.agent_starts = {{1, 2}, {3, 4}, {5, 6}};
    level.landmarks = {{2, 2}, {4, 5}, {6, 1}};
    GridState s = reset(level);
    s.t = 7;
    GridState shifted = s;
    for (Cell& c : shifted.agents) { c.x += 3; c.y += 2; }
    for (Cell& c : shifted.landmarks) { c.x += 3; c.y += 2; }
    for (int i = 0; i < 3; ++i) {
        Observation a = observe(s, i, cfg);
        Observation b = observe(shifted, i, cfg);
        CHECK(a == b);
    }
}

TEST_CASE("step is deterministic") {
    EnvConfig cfg = default_cfg();
    Rng rng(17);
    Level level = generate_level(rng, LevelType::Unrestricted, cfg);
    JointAction a = {Action::Up, Action::Left, Action::Right};
    GridState s1 = reset(level);
    GridState s2 = reset(level);
    StepOutcome o1 = step(s1, a, cfg);
    StepOutcome o2 = step(s2, a, cfg);
    CHECK(s1.agents == s2.agents);
    CHECK(o1.reward == o2.reward);
    CHECK(o1.done == o2.done);
}

TEST_CASE("expert return is 1.0 when agents start on landmarks and coverage ends episodes") {
    EnvConfig cfg = default_cfg();
    cfg.terminate_on_coverage = true;
    Level level;
    level.agent_starts = {{1, 1}, {4, 4}, {7, 7}};
    level.landmarks = {{4, 4}, {7, 7}, {1, 1}};
    CHECK(expert_max_return(level, cfg) == doctest::Approx(1.0));
}

TEST_CASE("expert return dominates every single fixed assignment") {
    EnvConfig cfg = default_cfg();
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Level level = generate_level(rng, LevelType::Unrestricted, cfg);
        const double best = expert_max_return(level, cfg);
        // identity assignment, simulated the same way
        GridState s = reset(level);
        double total = 0.0;
        JointAction a(cfg.n_agents);
        while (!s.done) {
            for (int i = 0; i < cfg.n_agents; ++i) {
                const Cell& from = s.agents[i];
                const Cell& to = s.landmarks[i];
                if (from.x < to.x) a[i] = Action::Right;
                else if (from.x > to.x) a[i] = Action::Left;
                else if (from.y < to.y) a[i] = Action::Up;
                else if (from.y > to.y) a[i] = Action::Down;
                else a[i] = Action::DoNothing;
            }
            total += step(s, a, cfg).reward;
        }
        CHECK(best >= total - 1e-9);
    }
}

TEST_CASE("expert return matches exhaustive search on 5x5 grids") {
    EnvConfig cfg = default_cfg();
    cfg.grid_size = 5;
    cfg.t_max = 8;
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Level level = generate_level(rng, LevelType::Unrestricted, cfg);
        test::ExhaustiveReturnOracle oracle(level, cfg);
        const long expect = oracle.best_covered_steps();
        const double expert = expert_max_return(level, cfg);
        const long expert_scaled = std::lround(expert * cfg.n_landmarks);
        CHECK(std::abs(expert * cfg.n_landmarks - expert_scaled) < 1e-6);
        CHECK(expert_scaled == expect);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("random rollouts never exceed the expert return") {
    EnvConfig cfg = default_cfg();
    Rng level_rng(31), walk_rng(32);
    int rollouts = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Level level = generate_level(level_rng, LevelType::Unrestricted, cfg);
        const double best = expert_max_return(level, cfg);
        for (int k = 0; k < 30; ++k) {
            CHECK(test::random_rollout(level, cfg, walk_rng) <= best + 1e-9);
            ++rollouts;
        }
    }
    CHECK(rollouts >= 1000);
}

TEST_CASE("level set serialization round-trips byte-identically") {
    EnvConfig cfg = default_cfg();
    Rng rng(8);
    std::vector<Level> levels;
    for (int i = 0; i < 10; ++i)
        levels.push_back(generate_level(rng, static_cast<LevelType>(i % 4), cfg));
    const std::string text = serialize_level_set(levels);
    std::vector<Level> parsed = parse_level_set(text, cfg);
    REQUIRE(parsed.size() == levels.size());
    for (size_t i = 0; i < levels.size(); ++i) CHECK(parsed[i] == levels[i]);
    CHECK(serialize_level_set(parsed) == text);
}
