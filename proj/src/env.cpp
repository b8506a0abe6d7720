#include "marl/env.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace marl {

const char* level_type_name(LevelType t) {
    switch (t) {
        case LevelType::Unrestricted: return "unrestricted";
        case LevelType::Type1: return "type1";
        case LevelType::Type2: return "type2";
        case LevelType::Type3: return "type3";
    }
    return "unrestricted";
}

LevelType level_type_from_name(const std::string& name) {
    if (name == "unrestricted") return LevelType::Unrestricted;
    if (name == "type1") return LevelType::Type1;
    if (name == "type2") return LevelType::Type2;
    if (name == "type3") return LevelType::Type3;
    throw std::invalid_argument("unknown level type: " + name);
}

std::array<RegionPair, 4> EnvConfig::regions() const {
    const int hi = grid_size - 1;
    const int lo_half = grid_size / 2 - 1;   // 4 on a 10-grid
    const int hi_half = grid_size / 2;       // 5 on a 10-grid
    const Region all{0, hi, 0, hi};
    const Region left{0, lo_half, 0, hi};
    const Region right{hi_half, hi, 0, hi};
    const Region bottom{0, hi, 0, lo_half};
    const Region top{0, hi, hi_half, hi};
    return {
        RegionPair{all, all},        // Unrestricted
        RegionPair{left, right},     // Type1: agents left, landmarks right
        RegionPair{right, left},     // Type2: mirrored
        RegionPair{bottom, top},     // Type3: agents low rows, landmarks high rows
    };
}

namespace {

Cell sample_cell(Rng& rng, const Region& r) {
    const int w = r.x1 - r.x0 + 1;
    const int h = r.y1 - r.y0 + 1;
    return Cell{r.x0 + rng.uniform_int(w), r.y0 + rng.uniform_int(h)};
}

bool taken(const Cell& c, const std::vector<Cell>& a, const std::vector<Cell>& b) {
    return std::find(a.begin(), a.end(), c) != a.end() ||
           std::find(b.begin(), b.end(), c) != b.end();
}

}  // namespace

Level generate_level(Rng& rng, LevelType type, const EnvConfig& cfg) {
    const RegionPair rp = cfg.regions()[static_cast<int>(type)];
    Level level;
    level.type = type;
    while (static_cast<int>(level.agent_starts.size()) < cfg.n_agents) {
        Cell c = sample_cell(rng, rp.agents);
        if (!taken(c, level.agent_starts, level.landmarks)) level.agent_starts.push_back(c);
    }
    while (static_cast<int>(level.landmarks.size()) < cfg.n_landmarks) {
        Cell c = sample_cell(rng, rp.landmarks);
        if (!taken(c, level.agent_starts, level.landmarks)) level.landmarks.push_back(c);
    }
    return level;
}

GridState reset(const Level& level) {
    GridState s;
    s.agents = level.agent_starts;
    s.landmarks = level.landmarks;
    s.t = 0;
    s.done = false;
    return s;
}

float coverage_reward(const GridState& state) {
    int covered = 0;
    for (const Cell& l : state.landmarks) {
        for (const Cell& a : state.agents) {
            if (a == l) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<float>(covered) / static_cast<float>(state.landmarks.size());
}

StepOutcome step(GridState& state, const JointAction& actions, const EnvConfig& cfg) {
    if (state.done) throw std::logic_error("step() called on a finished episode");
    if (static_cast<int>(actions.size()) != cfg.n_agents)
        throw std::invalid_argument("joint action size mismatch");

    const int hi = cfg.grid_size - 1;
    for (int i = 0; i < cfg.n_agents; ++i) {
        Cell& c = state.agents[i];
        switch (actions[i]) {
            case Action::DoNothing: break;
            case Action::Up: c.y = std::min(c.y + 1, hi); break;
            case Action::Down: c.y = std::max(c.y - 1, 0); break;
            case Action::Left: c.x = std::max(c.x - 1, 0); break;
            case Action::Right: c.x = std::min(c.x + 1, hi); break;
        }
    }
    state.t += 1;

    StepOutcome out;
    out.reward = coverage_reward(state);
    const bool full = out.reward >= 1.0f;
    out.done = (cfg.terminate_on_coverage && full) || state.t >= cfg.t_max;
    state.done = out.done;
    return out;
}

Observation observe(const GridState& state, int agent_id, const EnvConfig& cfg) {
    const float span = static_cast<float>(cfg.grid_size - 1);
    const Cell& me = state.agents[agent_id];
    Observation o;
    o.reserve(cfg.obs_dim());
    for (int j = 0; j < cfg.n_agents; ++j) {
        if (j == agent_id) continue;
        o.push_back(static_cast<float>(state.agents[j].x - me.x) / span);
        o.push_back(static_cast<float>(state.agents[j].y - me.y) / span);
    }
    for (const Cell& l : state.landmarks) {
        o.push_back(static_cast<float>(l.x - me.x) / span);
        o.push_back(static_cast<float>(l.y - me.y) / span);
    }
    o.push_back(2.0f * static_cast<float>(state.t) / static_cast<float>(cfg.t_max) - 1.0f);
    return o;
}

namespace {

Action expert_move(const Cell& from, const Cell& to, bool x_first) {
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

// One plan: each agent visits its waypoint chain in order (last entry is the
// parking landmark), moving x-first or y-first per the agent's mask bit.
double simulate_plan(const Level& level, const EnvConfig& cfg,
                     const std::vector<std::vector<Cell>>& waypoints, unsigned axis_mask,
                     std::vector<JointAction>* trace) {
    GridState s = reset(level);
    std::vector<size_t> wp(cfg.n_agents, 0);
    JointAction a(cfg.n_agents);
    double total = 0.0;
    while (!s.done) {
        for (int i = 0; i < cfg.n_agents; ++i) {
            while (wp[i] + 1 < waypoints[i].size() && s.agents[i] == waypoints[i][wp[i]])
                ++wp[i];
            a[i] = expert_move(s.agents[i], waypoints[i][wp[i]], (axis_mask >> i) & 1u);
        }
        total += step(s, a, cfg).reward;
        if (trace) trace->push_back(a);
    }
    return total;
}

struct ExpertSearch {
    double best = -1.0;
    std::vector<std::vector<Cell>> best_waypoints;
    unsigned best_mask = 0;
};

// Chains of distinct landmarks ending at the assigned one; passing over a
// landmark en route only pays if the walk detours through it, so enumerate
// those detours explicitly.
void chains_for(const std::vector<Cell>& lm, int goal, std::vector<std::vector<Cell>>& out) {
    const int n = static_cast<int>(lm.size());
    out.push_back({lm[goal]});
    for (int m1 = 0; m1 < n; ++m1) {
        if (m1 == goal) continue;
        out.push_back({lm[m1], lm[goal]});
        for (int m2 = 0; m2 < n; ++m2) {
            if (m2 == goal || m2 == m1) continue;
            out.push_back({lm[m1], lm[m2], lm[goal]});
        }
    }
}

ExpertSearch expert_search(const Level& level, const EnvConfig& cfg) {
    if (cfg.n_agents != cfg.n_landmarks)
        throw std::invalid_argument("expert oracle needs one landmark per agent");
    const int n = cfg.n_agents;
    std::vector<int> assign(n);
    for (int i = 0; i < n; ++i) assign[i] = i;

    ExpertSearch result;
    std::vector<std::vector<std::vector<Cell>>> choices(n);
    std::vector<std::vector<Cell>> plan(n);
    do {
        for (int i = 0; i < n; ++i) {
            choices[i].clear();
            chains_for(level.landmarks, assign[i], choices[i]);
        }
        std::vector<size_t> pick(n, 0);
        while (true) {
            for (int i = 0; i < n; ++i) plan[i] = choices[i][pick[i]];
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                const double total = simulate_plan(level, cfg, plan, mask, nullptr);
                if (total > result.best) {
                    result.best = total;
                    result.best_waypoints = plan;
                    result.best_mask = mask;
                }
            }
            int d = 0;
            while (d < n && ++pick[d] == choices[d].size()) pick[d++] = 0;
            if (d == n) break;
        }
    } while (std::next_permutation(assign.begin(), assign.end()));
    return result;
}

}  // namespace

double expert_max_return(const Level& level, const EnvConfig& cfg) {
    return expert_search(level, cfg).best;
}

std::vector<JointAction> expert_plan(const Level& level, const EnvConfig& cfg) {
    ExpertSearch s = expert_search(level, cfg);
    std::vector<JointAction> trace;
    simulate_plan(level, cfg, s.best_waypoints, s.best_mask, &trace);
    return trace;
}

std::string serialize_level(const Level& level) {
    std::ostringstream os;
    os << level_type_name(level.type);
    for (const Cell& c : level.agent_starts) os << ' ' << c.x << ',' << c.y;
    os << " |";
    for (const Cell& c : level.landmarks) os << ' ' << c.x << ',' << c.y;
    return os.str();
}

Level parse_level(const std::string& line, const EnvConfig& cfg) {
    std::istringstream is(line);
    std::string tok;
    if (!(is >> tok)) throw std::invalid_argument("empty level line");
    Level level;
    level.type = level_type_from_name(tok);
    bool in_landmarks = false;
    while (is >> tok) {
        if (tok == "|") {
            in_landmarks = true;
            continue;
        }
        const auto comma = tok.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad cell token: " + tok);
        Cell c{std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1))};
        if (c.x < 0 || c.x >= cfg.grid_size || c.y < 0 || c.y >= cfg.grid_size)
            throw std::invalid_argument("cell out of bounds: " + tok);
        (in_landmarks ? level.landmarks : level.agent_starts).push_back(c);
    }
    if (static_cast<int>(level.agent_starts.size()) != cfg.n_agents ||
        static_cast<int>(level.landmarks.size()) != cfg.n_landmarks)
        throw std::invalid_argument("level entity count mismatch: " + line);
    return level;
}

std::string serialize_level_set(const std::vector<Level>& levels) {
    std::string out;
    for (const Level& l : levels) {
        out += serialize_level(l);
        out += '\n';
    }
    return out;
}

std::vector<Level> parse_level_set(const std::string& text, const EnvConfig& cfg) {
    std::vector<Level> levels;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        levels.push_back(parse_level(line, cfg));
    }
    return levels;
}

}  // namespace marl
