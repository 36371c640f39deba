#pragma once

#include "physarum/lattice.hpp"
#include "physarum/params.hpp"

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace physarum {

enum class StimulusKind { attractant, light };

std::string_view to_string(StimulusKind kind);

/// A spatial projection active for scheduler steps in [start_step, end_step).
/// `magnitude` is the attractant added per region cell per step; light events
/// ignore it (light strength lives in ModelParams).
struct StimulusEvent {
    StimulusKind kind = StimulusKind::attractant;
    Region region;
    double magnitude = 0.0;
    std::int64_t start_step = 0;
    std::int64_t end_step = 0;

    bool active_at(std::int64_t step) const { return start_step <= step && step < end_step; }
};

struct StimulusSchedule {
    std::vector<StimulusEvent> events;
    double background_rate = 0.0;
};

/// Habitable cells with x in [width/3, 2*width/3).
Region middle_third_region(const ArenaMask& mask);

/// Events with start_step <= step < end_step, in schedule order.
std::vector<std::reference_wrapper<const StimulusEvent>> active_events(const StimulusSchedule& schedule,
                                                                       std::int64_t step);

/// Projects the schedule onto the trail for `step`: background on every habitable
/// cell, then each active attractant event, then each active light event scales
/// its region by params.light_trail_factor. Returns the union of active light
/// regions, which sensors attenuate for the rest of the step.
Region apply_stimuli(TrailLattice& trail, const ArenaMask& mask, const StimulusSchedule& schedule,
                     const ModelParams& params, std::int64_t step);

/// Allocation-free variant; `light_now` is cleared and refilled.
void apply_stimuli(TrailLattice& trail, const ArenaMask& mask, const StimulusSchedule& schedule,
                   const ModelParams& params, std::int64_t step, Region& light_now);

}  // namespace physarum
