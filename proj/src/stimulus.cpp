#include "physarum/stimulus.hpp"

namespace physarum {

std::string_view to_string(StimulusKind kind)
{
    switch (kind) {
    case StimulusKind::attractant:
        return "attractant";
    case StimulusKind::light:
        return "light";
    }
    return "unknown";
}

Region middle_third_region(const ArenaMask& mask)
{
    return Region::columns(mask, mask.width() / 3, 2 * mask.width() / 3);
}

std::vector<std::reference_wrapper<const StimulusEvent>> active_events(const StimulusSchedule& schedule,
                                                                       std::int64_t step)
{
    std::vector<std::reference_wrapper<const StimulusEvent>> out;
    for (const auto& event : schedule.events) {
        if (event.active_at(step)) {
            out.emplace_back(event);
        }
    }
    return out;
}

Region apply_stimuli(TrailLattice& trail, const ArenaMask& mask, const StimulusSchedule& schedule,
                     const ModelParams& params, std::int64_t step)
{
    Region light_now(mask.width(), mask.height());
    apply_stimuli(trail, mask, schedule, params, step, light_now);
    return light_now;
}

void apply_stimuli(TrailLattice& trail, const ArenaMask& mask, const StimulusSchedule& schedule,
                   const ModelParams& params, std::int64_t step, Region& light_now)
{
    if (trail.width() != mask.width() || trail.height() != mask.height()) {
        throw ConfigError("trail and mask dimensions differ");
    }
    if (light_now.width() != mask.width() || light_now.height() != mask.height()) {
        light_now = Region(mask.width(), mask.height());
    } else {
        light_now.clear();
    }

    if (schedule.background_rate > 0.0) {
        const auto amount = static_cast<Scalar>(schedule.background_rate);
        auto values = trail.values();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (mask.habitable(i)) {
                values[i] += amount;
            }
        }
    }

    for (const auto& event : schedule.events) {
        if (event.kind == StimulusKind::attractant && event.active_at(step)) {
            add_to_region(trail, event.region, static_cast<Scalar>(event.magnitude));
        }
    }
    for (const auto& event : schedule.events) {
        if (event.kind == StimulusKind::light && event.active_at(step)) {
            scale_region(trail, event.region, params.light_trail_factor);
            light_now.unite(event.region);
        }
    }
}

}  // namespace physarum
