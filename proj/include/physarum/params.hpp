#pragma once

#include <numbers>

namespace physarum {

/// How the sensory and motor stages are interleaved within a scheduler step.
enum class StageOrder {
    interleaved,      ///< each agent senses, rotates and moves before the next agent is visited
    sense_all_first,  ///< every agent senses and rotates, then every agent moves (same shuffled order)
};

/// Reorientation rule after a blocked move.
enum class BlockedTurn {
    uniform,  ///< new heading uniform in [0, 2pi)
    rotate,   ///< heading +/- rotation_angle, fair coin
};

/// Agent and environment constants. Angles in radians, distances in cells,
/// trail quantities in arbitrary concentration units.
struct ModelParams {
    double sensor_angle = std::numbers::pi / 4.0;
    double rotation_angle = std::numbers::pi / 4.0;
    double sensor_offset = 9.0;
    double step_size = 1.0;
    double deposit = 5.0;
    double decay = 0.1;
    double light_sensor_attenuation = 0.1;
    double light_trail_factor = 0.9;
    double background_rate = 0.01;
    double stimulus_rate = 0.1;
    StageOrder stage_order = StageOrder::interleaved;
    BlockedTurn blocked_turn = BlockedTurn::uniform;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

}  // namespace physarum
