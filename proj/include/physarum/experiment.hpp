#pragma once

#include "physarum/agents.hpp"
#include "physarum/measurement.hpp"
#include "physarum/params.hpp"
#include "physarum/stimulus.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace physarum {

inline constexpr std::uint64_t kDefaultSeed = 20130901;

struct ArenaSpec {
    int width = 300;
    int height = 100;
    int border_rows = 10;

    friend bool operator==(const ArenaSpec&, const ArenaSpec&) = default;
};

/// Stimulus event as written in a config: a column band of the habitable
/// arena. Without an explicit magnitude the model's stimulus_rate applies.
struct EventSpec {
    StimulusKind kind = StimulusKind::attractant;
    int column_begin = 0;
    int column_end = 0;
    std::int64_t start_step = 0;
    std::int64_t end_step = 0;
    std::optional<double> magnitude;

    friend bool operator==(const EventSpec&, const EventSpec&) = default;
};

struct ExperimentConfig {
    ArenaSpec arena;
    std::int64_t population = 8000;
    ModelParams model;
    std::vector<EventSpec> events;
    std::int64_t total_steps = 20000;
    std::int64_t sample_interval = 10;
    std::int64_t snapshot_interval = 0;
    std::uint64_t seed = kDefaultSeed;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Attractant over the middle third of a 300x100 tube, steps [1000, 4000).
ExperimentConfig preset_li();
/// preset_li() with the attractant replaced by simulated light.
ExperimentConfig preset_la();

struct Violation {
    std::string code;
    std::string message;
};

/// Every broken invariant of `config`; empty iff the config can be run.
std::vector<Violation> validate(const ExperimentConfig& config);

/// Throws ConfigError listing the violations, if any.
void require_valid(const ExperimentConfig& config);

/// Column span used for contrast: the first event's band, or the middle third
/// when there are no events.
ColumnRange inside_columns(const ExperimentConfig& config);

StimulusSchedule build_schedule(const ExperimentConfig& config, const ArenaMask& mask);

/// Arena, population and schedule for step 0. Validates first.
World make_world(const ExperimentConfig& config);

struct Snapshot {
    std::int64_t step = 0;
    TrailLattice trail;
    std::vector<Agent> agents;
};

struct RunRecord {
    ExperimentConfig config;
    SpaceTimeMatrix spacetime;
    RunSummary summary;
    std::vector<Snapshot> snapshots;
};

/// Runs total_steps scheduler steps from a freshly built world, sampling
/// density at every multiple of sample_interval including step 0. `observer`,
/// when set, sees the world after initialisation and after every step.
RunRecord run(const ExperimentConfig& config,
              const std::function<void(const World&, std::int64_t step)>& observer = {});

}  // namespace physarum
