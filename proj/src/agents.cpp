#include "physarum/agents.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace physarum {

OccupancyLattice::OccupancyLattice(int width, int height)
    : width_(width), height_(height), cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), kNoAgent)
{
}

void OccupancyLattice::place(AgentId id, int x, int y)
{
    auto& slot = cells_[index(x, y)];
    if (slot != kNoAgent) {
        throw std::logic_error("occupancy cell already taken");
    }
    slot = id;
}

void OccupancyLattice::relocate(AgentId id, int from_x, int from_y, int to_x, int to_y)
{
    auto& from = cells_[index(from_x, from_y)];
    auto& to = cells_[index(to_x, to_y)];
    if (from != id || to != kNoAgent) {
        throw std::logic_error("inconsistent occupancy relocation");
    }
    from = kNoAgent;
    to = id;
}

std::size_t OccupancyLattice::occupied_count() const
{
    return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(), [](AgentId id) { return id != kNoAgent; }));
}

namespace {

double sample(const TrailLattice& trail, const ArenaMask& mask, const Region& light, double attenuation, double x,
              double y)
{
    if (mask.periodic_y()) {
        y = wrap_x(y, trail.height());
    }
    // y >= 0 makes truncation equal to floor.
    if (!(y >= 0.0) || y >= static_cast<double>(trail.height())) {
        return 0.0;
    }
    const int cx = static_cast<int>(wrap_x(x, trail.width()));
    const int cy = static_cast<int>(y);
    const std::size_t i = trail.index(cx, cy);
    if (!mask.habitable(i)) {
        return 0.0;
    }
    const double value = static_cast<double>(trail[i]);
    if (!light.empty() && light.contains_index(i)) {
        return value * attenuation;
    }
    return value;
}

struct Direction {
    double c;
    double s;

    static Direction of(double angle) { return {std::cos(angle), std::sin(angle)}; }
    Direction rotated(const Direction& by) const { return {c * by.c - s * by.s, s * by.c + c * by.s}; }
    Direction rotated_back(const Direction& by) const { return {c * by.c + s * by.s, s * by.c - c * by.s}; }
};

SensorReadings sense_along(const Agent& agent, const Direction& dir, const Direction& sensor_turn,
                           const TrailLattice& trail, const ArenaMask& mask, const Region& light,
                           const ModelParams& params)
{
    const double so = params.sensor_offset;
    const double att = params.light_sensor_attenuation;
    auto probe = [&](const Direction& d) {
        return sample(trail, mask, light, att, agent.x + so * d.c, agent.y + so * d.s);
    };
    SensorReadings r;
    r.front = probe(dir);
    r.front_left = probe(dir.rotated(sensor_turn));
    r.front_right = probe(dir.rotated_back(sensor_turn));
    return r;
}

bool move_along(Agent& agent, const Direction& dir, AgentId id, OccupancyLattice& occupancy, const ArenaMask& mask,
                TrailLattice& trail, const ModelParams& params, Rng& gen)
{
    const double nx = wrap_x(agent.x + params.step_size * dir.c, mask.width());
    double ny = agent.y + params.step_size * dir.s;
    if (mask.periodic_y()) {
        ny = wrap_x(ny, mask.height());
    }

    const int from_x = agent.cell_x();
    const int from_y = agent.cell_y();
    bool open = ny >= 0.0 && ny < static_cast<double>(mask.height());
    int to_x = 0;
    int to_y = 0;
    if (open) {
        to_x = static_cast<int>(nx);
        to_y = static_cast<int>(ny);
        const bool same_cell = to_x == from_x && to_y == from_y;
        open = mask.habitable(to_x, to_y) && (same_cell || !occupancy.occupied(to_x, to_y));
    }

    if (!open) {
        if (params.blocked_turn == BlockedTurn::uniform) {
            agent.heading = normalize_heading(uniform01(gen) * kTwoPi);
        } else {
            const double delta = coin(gen) ? params.rotation_angle : -params.rotation_angle;
            agent.heading = normalize_heading(agent.heading + delta);
        }
        return false;
    }

    if (to_x != from_x || to_y != from_y) {
        occupancy.relocate(id, from_x, from_y, to_x, to_y);
    }
    agent.x = nx;
    agent.y = ny;
    trail.at(to_x, to_y) += static_cast<Scalar>(params.deposit);
    return true;
}

}  // namespace

SensorReadings sense(const Agent& agent, const TrailLattice& trail, const ArenaMask& mask, const Region& light,
                     const ModelParams& params)
{
    if (!light.empty() && (light.width() != trail.width() || light.height() != trail.height())) {
        throw std::invalid_argument("light region and trail dimensions differ");
    }
    return sense_along(agent, Direction::of(agent.heading), Direction::of(params.sensor_angle), trail, mask, light,
                       params);
}

double normalize_heading(double heading)
{
    if (heading >= 0.0 && heading < kTwoPi) {
        return heading;
    }
    double h = std::fmod(heading, kTwoPi);
    if (h < 0.0) {
        h += kTwoPi;
    }
    if (h >= kTwoPi) {
        h -= kTwoPi;
    }
    return h;
}

bool try_move(Agent& agent, AgentId id, OccupancyLattice& occupancy, const ArenaMask& mask, TrailLattice& trail,
              const ModelParams& params, Rng& gen)
{
    return move_along(agent, Direction::of(agent.heading), id, occupancy, mask, trail, params, gen);
}

Population init_population(const ArenaMask& mask, std::size_t n, Rng& gen)
{
    std::vector<std::uint32_t> free_cells;
    free_cells.reserve(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.habitable(i)) {
            free_cells.push_back(static_cast<std::uint32_t>(i));
        }
    }
    if (n > free_cells.size()) {
        throw ConfigError("population " + std::to_string(n) + " exceeds habitable capacity " +
                          std::to_string(free_cells.size()));
    }

    Population pop;
    pop.occupancy = OccupancyLattice(mask.width(), mask.height());
    pop.agents.reserve(n);
    const auto width = static_cast<std::uint32_t>(mask.width());
    // Partial Fisher-Yates: the first n slots are a uniform sample without replacement.
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(gen, free_cells.size() - i));
        std::swap(free_cells[i], free_cells[j]);
        const int x = static_cast<int>(free_cells[i] % width);
        const int y = static_cast<int>(free_cells[i] / width);
        const double heading = normalize_heading(uniform01(gen) * kTwoPi);
        pop.agents.push_back({x + 0.5, y + 0.5, heading});
        pop.occupancy.place(static_cast<AgentId>(i), x, y);
    }
    return pop;
}

World::World(ArenaMask mask_, StimulusSchedule schedule_, ModelParams params_, Population population, Rng rng_)
    : mask(std::move(mask_)),
      trail(mask.width(), mask.height()),
      agents(std::move(population.agents)),
      occupancy(std::move(population.occupancy)),
      schedule(std::move(schedule_)),
      params(params_),
      rng(rng_),
      trail_scratch(mask.width(), mask.height()),
      light_now(mask.width(), mask.height())
{
    visit_order.resize(agents.size());
}

void scheduler_step(World& world, std::int64_t step_index)
{
    apply_stimuli(world.trail, world.mask, world.schedule, world.params, step_index, world.light_now);

    auto& order = world.visit_order;
    order.resize(world.agents.size());
    std::iota(order.begin(), order.end(), AgentId{0});
    shuffle(std::span<AgentId>(order), world.rng);

    // One sin/cos per agent visit; sensor and turn directions are rotations of it.
    const Direction sensor_turn = Direction::of(world.params.sensor_angle);
    const Direction body_turn = Direction::of(world.params.rotation_angle);
    auto sense_and_turn = [&](Agent& agent) {
        const Direction dir = Direction::of(agent.heading);
        const auto readings =
            sense_along(agent, dir, sensor_turn, world.trail, world.mask, world.light_now, world.params);
        const double delta = decide_rotation(readings, world.params, world.rng);
        if (delta == 0.0) {
            return dir;
        }
        agent.heading = normalize_heading(agent.heading + delta);
        return delta > 0.0 ? dir.rotated(body_turn) : dir.rotated_back(body_turn);
    };

    if (world.params.stage_order == StageOrder::interleaved) {
        for (const AgentId id : order) {
            Agent& agent = world.agents[static_cast<std::size_t>(id)];
            const Direction dir = sense_and_turn(agent);
            move_along(agent, dir, id, world.occupancy, world.mask, world.trail, world.params, world.rng);
        }
    } else {
        auto& dirs = world.pending_directions;
        dirs.resize(2 * world.agents.size());
        for (const AgentId id : order) {
            const auto i = static_cast<std::size_t>(id);
            const Direction dir = sense_and_turn(world.agents[i]);
            dirs[2 * i] = dir.c;
            dirs[2 * i + 1] = dir.s;
        }
        for (const AgentId id : order) {
            const auto i = static_cast<std::size_t>(id);
            move_along(world.agents[i], {dirs[2 * i], dirs[2 * i + 1]}, id, world.occupancy, world.mask, world.trail,
                       world.params, world.rng);
        }
    }

    diffuse_and_decay_into(world.trail, world.mask, world.params.decay, world.trail_scratch);
    std::swap(world.trail, world.trail_scratch);
}

std::vector<std::string> check_world(const World& world)
{
    std::vector<std::string> problems;
    const auto& occ = world.occupancy;
    if (occ.width() != world.mask.width() || occ.height() != world.mask.height()) {
        problems.emplace_back("occupancy dimensions differ from the arena");
        return problems;
    }
    for (std::size_t i = 0; i < world.agents.size(); ++i) {
        const Agent& a = world.agents[i];
        const int cx = a.cell_x();
        const int cy = a.cell_y();
        if (!world.mask.in_bounds(cx, cy)) {
            problems.push_back("agent " + std::to_string(i) + " is off the lattice");
            continue;
        }
        if (!world.mask.habitable(cx, cy)) {
            problems.push_back("agent " + std::to_string(i) + " sits on an inhabitable cell");
        }
        if (occ.occupant(cx, cy) != static_cast<AgentId>(i)) {
            problems.push_back("agent " + std::to_string(i) + " is not registered at its cell");
        }
        if (!(a.heading >= 0.0 && a.heading < kTwoPi)) {
            problems.push_back("agent " + std::to_string(i) + " heading out of range");
        }
    }
    if (occ.occupied_count() != world.agents.size()) {
        problems.push_back("occupied cell count " + std::to_string(occ.occupied_count()) + " differs from population " +
                           std::to_string(world.agents.size()));
    }
    for (int y = 0; y < occ.height(); ++y) {
        for (int x = 0; x < occ.width(); ++x) {
            const AgentId id = occ.occupant(x, y);
            if (id == kNoAgent) {
                continue;
            }
            if (!world.mask.habitable(x, y)) {
                problems.push_back("inhabitable cell (" + std::to_string(x) + "," + std::to_string(y) + ") is occupied");
            }
            if (id < 0 || static_cast<std::size_t>(id) >= world.agents.size()) {
                problems.push_back("unknown agent id in occupancy");
            }
        }
    }
    return problems;
}

}  // namespace physarum
