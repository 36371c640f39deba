#pragma once

#include "physarum/lattice.hpp"
#include "physarum/params.hpp"
#include "physarum/rng.hpp"
#include "physarum/stimulus.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace physarum {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// One particle of the virtual plasmodium. Position in cell units, heading in
/// radians in [0, 2pi). The particle lives in cell (floor(x), floor(y)).
struct Agent {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;

    int cell_x() const { return static_cast<int>(std::floor(x)); }
    int cell_y() const { return static_cast<int>(std::floor(y)); }

    friend bool operator==(const Agent&, const Agent&) = default;
};

using AgentId = std::int32_t;
inline constexpr AgentId kNoAgent = -1;

/// One-agent-per-cell exclusion map.
class OccupancyLattice {
public:
    OccupancyLattice() = default;
    OccupancyLattice(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    AgentId occupant(int x, int y) const { return cells_[index(x, y)]; }
    bool occupied(int x, int y) const { return occupant(x, y) != kNoAgent; }

    /// Throws std::logic_error if the cell is already taken.
    void place(AgentId id, int x, int y);
    /// Moves `id` from one cell to another; the target must be free.
    void relocate(AgentId id, int from_x, int from_y, int to_x, int to_y);

    std::size_t occupied_count() const;

    friend bool operator==(const OccupancyLattice&, const OccupancyLattice&) = default;

private:
    std::size_t index(int x, int y) const
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<AgentId> cells_;
};

struct SensorReadings {
    double front = 0.0;
    double front_left = 0.0;
    double front_right = 0.0;
};

/// Samples the trail at sensor_offset along heading (front), heading + SA
/// (front_left) and heading - SA (front_right). x wraps; samples off the lattice
/// in y or on inhabitable cells read 0; samples inside `light` are multiplied by
/// light_sensor_attenuation. An empty `light` region disables attenuation.
SensorReadings sense(const Agent& agent, const TrailLattice& trail, const ArenaMask& mask, const Region& light,
                     const ModelParams& params);

/// Heading change for one sensory decision. Draws from `gen` only when the front
/// reading is strictly the smallest of the three.
template <class Gen>
double decide_rotation(const SensorReadings& r, const ModelParams& params, Gen& gen)
{
    if (r.front > r.front_left && r.front > r.front_right) {
        return 0.0;
    }
    if (r.front < r.front_left && r.front < r.front_right) {
        return coin(gen) ? params.rotation_angle : -params.rotation_angle;
    }
    if (r.front_right < r.front_left) {
        return params.rotation_angle;
    }
    if (r.front_left < r.front_right) {
        return -params.rotation_angle;
    }
    return 0.0;
}

/// Heading reduced into [0, 2pi).
double normalize_heading(double heading);

/// Motor stage for agent `id`. Moves one step along its heading if the target
/// cell is habitable and free (or is its own cell), depositing params.deposit
/// there. Otherwise the agent stays and picks a new heading.
bool try_move(Agent& agent, AgentId id, OccupancyLattice& occupancy, const ArenaMask& mask, TrailLattice& trail,
              const ModelParams& params, Rng& gen);

struct Population {
    std::vector<Agent> agents;
    OccupancyLattice occupancy;
};

/// n agents on distinct uniformly chosen habitable cells (at cell centres) with
/// uniform headings. Throws ConfigError if n exceeds the habitable capacity.
Population init_population(const ArenaMask& mask, std::size_t n, Rng& gen);

/// Everything one scheduler step reads or writes.
struct World {
    ArenaMask mask;
    TrailLattice trail;
    std::vector<Agent> agents;
    OccupancyLattice occupancy;
    StimulusSchedule schedule;
    ModelParams params;
    Rng rng;

    // Scratch reused across steps.
    TrailLattice trail_scratch;
    Region light_now;
    std::vector<AgentId> visit_order;
    std::vector<double> pending_directions;

    World(ArenaMask mask_, StimulusSchedule schedule_, ModelParams params_, Population population, Rng rng_);
};

/// Stimulus projection, one shuffled sense/rotate/move pass over all agents,
/// then diffusion and decay. `step_index` selects the active stimuli.
void scheduler_step(World& world, std::int64_t step_index);

/// Human-readable descriptions of every broken occupancy or habitability
/// invariant; empty when the world is consistent.
std::vector<std::string> check_world(const World& world);

}  // namespace physarum
