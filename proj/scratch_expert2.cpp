#include <algorithm>
#include <cstdio>
#include <vector>
#include "marl/env.hpp"
#include "../tests/test_util.hpp"
using namespace marl;

namespace {
Action move_toward(const Cell& from, const Cell& to, bool x_first) {
    if (x_first) {
        if (from.x < to.x) return Action::Right;
        if (from.x > to.x) return Action::Left;
        if (from.y < to.y) return Action::Up;
        if (from.y > to.y) return Action::Down;
    } else {
        if (from.y < to.y) return Action::Up;
        if (from.y > to.y) return Action::Down;
        if (from.x < to.x) return Action::Right;
        if (from.x > to.x) return Action::Left;
    }
    return Action::DoNothing;
}
double simulate(const Level& level, const EnvConfig& cfg,
                const std::vector<std::vector<Cell>>& waypoints, unsigned axis_mask) {
    GridState s = reset(level);
    std::vector<size_t> wp_idx(cfg.n_agents, 0);
    JointAction a(cfg.n_agents);
    double total = 0.0;
    while (!s.done) {
        for (int i = 0; i < cfg.n_agents; ++i) {
            while (wp_idx[i] + 1 < waypoints[i].size() && s.agents[i] == waypoints[i][wp_idx[i]]) ++wp_idx[i];
            a[i] = move_toward(s.agents[i], waypoints[i][wp_idx[i]], (axis_mask >> i) & 1u);
        }
        total += step(s, a, cfg).reward;
    }
    return total;
}
long scaled(double v, const EnvConfig& cfg) { return std::lround(v * cfg.n_landmarks); }
long expert_chains(const Level& level, const EnvConfig& cfg) {
    const auto& lm = level.landmarks;
    std::vector<int> assign{0, 1, 2};
    double best = 0;
    do {
        std::vector<std::vector<std::vector<Cell>>> choices(3);
        for (int i = 0; i < 3; ++i) {
            const int goal = assign[i];
            choices[i].push_back({lm[goal]});
            for (int m1 = 0; m1 < 3; ++m1) {
                if (m1 == goal) continue;
                choices[i].push_back({lm[m1], lm[goal]});
                for (int m2 = 0; m2 < 3; ++m2) {
                    if (m2 == goal || m2 == m1) continue;
                    choices[i].push_back({lm[m1], lm[m2], lm[goal]});
                }
            }
        }
        for (const auto& c0 : choices[0])
            for (const auto& c1 : choices[1])
                for (const auto& c2 : choices[2])
                    for (unsigned mask = 0; mask < 8; ++mask)
                        best = std::max(best, simulate(level, cfg, {c0, c1, c2}, mask));
    } while (std::next_permutation(assign.begin(), assign.end()));
    return scaled(best, cfg);
}
void sweep(int grid, int tmax, int trials, uint64_t seed) {
    EnvConfig cfg; cfg.grid_size = grid; cfg.t_max = tmax;
    Rng rng(seed);
    int bad = 0; long maxgap = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Level level = generate_level(rng, LevelType::Unrestricted, cfg);
        test::ExhaustiveReturnOracle oracle(level, cfg);
        long opt = oracle.best_covered_steps();
        long ch = expert_chains(level, cfg);
        if (ch != opt) { ++bad; maxgap = std::max(maxgap, std::abs(opt - ch)); }
    }
    std::printf("grid=%d tmax=%d trials=%d chain_bad=%d maxgap=%ld\n", grid, tmax, trials, bad, maxgap);
}
}  // namespace
int main() {
    sweep(5, 8, 200, 99);
    sweep(5, 10, 150, 7);
    sweep(4, 7, 200, 13);
    sweep(6, 9, 60, 3);
    // termination-at-coverage: exhaustive optimum vs beeline expert, larger horizon
    EnvConfig cfg; cfg.grid_size = 6; cfg.t_max = 14; cfg.terminate_on_coverage = true;
    Rng rng(21);
    for (int i = 0; i < 5; ++i) {
        Level level = generate_level(rng, LevelType::Unrestricted, cfg);
        test::ExhaustiveReturnOracle oracle(level, cfg);
        std::printf("coverage-term 6x6 t14: exhaustive=%ld expert_chains=%ld\n",
                    oracle.best_covered_steps(), expert_chains(level, cfg));
    }
    return 0;
}
