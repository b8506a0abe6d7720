#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "marl/rng.hpp"

namespace marl {

// Cooperative landmark-coverage gridworld. Agents move one tile per step and
// share a reward equal to the fraction of landmarks covered by at least one
// agent after the joint move.

enum class Action : int { DoNothing = 0, Up = 1, Down = 2, Left = 3, Right = 4 };
inline constexpr int kNumActions = 5;

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

enum class LevelType : int { Unrestricted = 0, Type1 = 1, Type2 = 2, Type3 = 3 };

const char* level_type_name(LevelType t);
LevelType level_type_from_name(const std::string& name);

// Inclusive cell rectangle.
struct Region {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool contains(const Cell& c) const {
        return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1;
    }
};

struct RegionPair {
    Region agents;
    Region landmarks;
};

struct EnvConfig {
    int grid_size = 10;
    int n_agents = 3;
    int n_landmarks = 3;
    int t_max = 25;
    // When true an episode also ends as soon as every landmark is covered.
    bool terminate_on_coverage = false;

    int obs_dim() const { return 2 * (n_agents - 1) + 2 * n_landmarks + 1; }

    // Start regions per level type; data, so alternative splits are a config
    // edit rather than a code change.
    std::array<RegionPair, 4> regions() const;
};

struct Level {
    std::vector<Cell> agent_starts;
    std::vector<Cell> landmarks;
    LevelType type = LevelType::Unrestricted;
    bool operator==(const Level&) const = default;
};

struct GridState {
    std::vector<Cell> agents;
    std::vector<Cell> landmarks;
    int t = 0;
    bool done = false;
};

using JointAction = std::vector<Action>;
using Observation = std::vector<float>;

Level generate_level(Rng& rng, LevelType type, const EnvConfig& cfg);

GridState reset(const Level& level);

struct StepOutcome {
    float reward = 0.0f;
    bool done = false;
};

// Moves every agent one tile (clamped at the grid edge), advances time and
// computes the shared reward on the post-move state. Throws std::logic_error
// if the state is already done.
StepOutcome step(GridState& state, const JointAction& actions, const EnvConfig& cfg);

// Fraction of landmarks covered by at least one agent.
float coverage_reward(const GridState& state);

// Local view of one agent: relative (dx, dy) to the other agents by ascending
// index, then to each landmark, then the normalised timestep. All in [-1, 1].
Observation observe(const GridState& state, int agent_id, const EnvConfig& cfg);

// Return of a hand-crafted expert team: best over all agent->landmark
// assignments, optional en-route landmark waypoints and per-agent x/y leg
// order, walking Manhattan-shortest paths and parking on the goal. Matches an
// exhaustive joint-action search on small grids.
double expert_max_return(const Level& level, const EnvConfig& cfg);

// The joint-action sequence realising expert_max_return.
std::vector<JointAction> expert_plan(const Level& level, const EnvConfig& cfg);

// One line per level: "type ax,ay ax,ay ax,ay | lx,ly lx,ly lx,ly".
std::string serialize_level(const Level& level);
Level parse_level(const std::string& line, const EnvConfig& cfg);

std::string serialize_level_set(const std::vector<Level>& levels);
std::vector<Level> parse_level_set(const std::string& text, const EnvConfig& cfg);

}  // namespace marl
