#include "physarum/experiment.hpp"

#include <cmath>
#include <sstream>

namespace physarum {

ExperimentConfig preset_li()
{
    ExperimentConfig config;
    const int third = config.arena.width / 3;
    config.events.push_back({StimulusKind::attractant, third, 2 * config.arena.width / 3, 1000, 4000, std::nullopt});
    return config;
}

ExperimentConfig preset_la()
{
    ExperimentConfig config = preset_li();
    config.events.front().kind = StimulusKind::light;
    return config;
}

namespace {

void check_fraction(std::vector<Violation>& out, const char* name, double value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must lie in [0, 1], got " << value;
        out.push_back({std::string("model.") + name, msg.str()});
    }
}

void check_non_negative(std::vector<Violation>& out, const char* name, double value)
{
    if (!(value >= 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be finite and non-negative, got " << value;
        out.push_back({std::string("model.") + name, msg.str()});
    }
}

}  // namespace

std::vector<Violation> validate(const ExperimentConfig& config)
{
    std::vector<Violation> out;
    const auto& arena = config.arena;
    bool arena_ok = true;
    if (arena.width < 3) {
        out.push_back({"arena.width", "width must be >= 3, got " + std::to_string(arena.width)});
        arena_ok = false;
    }
    if (arena.height < 3) {
        out.push_back({"arena.height", "height must be >= 3, got " + std::to_string(arena.height)});
        arena_ok = false;
    }
    if (arena.border_rows < 0) {
        out.push_back({"arena.border_rows", "border_rows must be >= 0, got " + std::to_string(arena.border_rows)});
        arena_ok = false;
    } else if (arena.height <= 2 * arena.border_rows) {
        out.push_back({"arena.band", "height " + std::to_string(arena.height) + " leaves no habitable band with " +
                                         std::to_string(arena.border_rows) + " border rows"});
        arena_ok = false;
    }

    const std::int64_t capacity =
        arena_ok ? static_cast<std::int64_t>(arena.width) * (arena.height - 2 * arena.border_rows) : -1;
    if (config.population < 1) {
        out.push_back({"population.range", "population must be >= 1, got " + std::to_string(config.population)});
    } else if (capacity >= 0 && config.population > capacity) {
        out.push_back({"population.capacity", "population " + std::to_string(config.population) +
                                                  " exceeds habitable capacity " + std::to_string(capacity)});
    }

    if (config.total_steps < 1) {
        out.push_back({"run.total_steps", "total_steps must be >= 1"});
    }
    if (config.sample_interval < 1) {
        out.push_back({"run.sample_interval", "sample_interval must be >= 1"});
    }
    if (config.snapshot_interval < 0) {
        out.push_back({"run.snapshot_interval", "snapshot_interval must be >= 0 (0 disables snapshots)"});
    }

    const auto& m = config.model;
    check_non_negative(out, "sensor_angle", m.sensor_angle);
    check_non_negative(out, "rotation_angle", m.rotation_angle);
    check_non_negative(out, "sensor_offset", m.sensor_offset);
    check_non_negative(out, "step_size", m.step_size);
    check_non_negative(out, "deposit", m.deposit);
    check_non_negative(out, "background_rate", m.background_rate);
    check_non_negative(out, "stimulus_rate", m.stimulus_rate);
    check_fraction(out, "decay", m.decay);
    check_fraction(out, "light_sensor_attenuation", m.light_sensor_attenuation);
    check_fraction(out, "light_trail_factor", m.light_trail_factor);
    if (m.sensor_offset < m.step_size) {
        out.push_back({"model.sensor_offset", "sensor_offset must be >= step_size"});
    }

    for (std::size_t i = 0; i < config.events.size(); ++i) {
        const auto& e = config.events[i];
        const std::string prefix = "event[" + std::to_string(i) + "]";
        if (e.start_step < 0 || e.start_step >= e.end_step) {
            out.push_back({"event.window", prefix + " needs 0 <= start < end, got [" + std::to_string(e.start_step) +
                                               ", " + std::to_string(e.end_step) + ")"});
        }
        if (e.column_begin < 0 || e.column_end > arena.width || e.column_begin >= e.column_end) {
            out.push_back({"event.columns", prefix + " columns [" + std::to_string(e.column_begin) + ", " +
                                                std::to_string(e.column_end) + ") are empty or outside the arena"});
        }
        if (e.magnitude && !(*e.magnitude >= 0.0 && std::isfinite(*e.magnitude))) {
            out.push_back({"event.magnitude", prefix + " magnitude must be finite and non-negative"});
        }
    }
    return out;
}

void require_valid(const ExperimentConfig& config)
{
    const auto violations = validate(config);
    if (violations.empty()) {
        return;
    }
    std::string message = "invalid configuration:";
    for (const auto& v : violations) {
        message += "\n  " + v.code + ": " + v.message;
    }
    throw ConfigError(message);
}

ColumnRange inside_columns(const ExperimentConfig& config)
{
    if (!config.events.empty()) {
        return {config.events.front().column_begin, config.events.front().column_end};
    }
    return {config.arena.width / 3, 2 * config.arena.width / 3};
}

StimulusSchedule build_schedule(const ExperimentConfig& config, const ArenaMask& mask)
{
    StimulusSchedule schedule;
    schedule.background_rate = config.model.background_rate;
    for (const auto& spec : config.events) {
        StimulusEvent event;
        event.kind = spec.kind;
        event.region = Region::columns(mask, spec.column_begin, spec.column_end);
        event.magnitude = spec.magnitude.value_or(config.model.stimulus_rate);
        event.start_step = spec.start_step;
        event.end_step = spec.end_step;
        schedule.events.push_back(std::move(event));
    }
    return schedule;
}

World make_world(const ExperimentConfig& config)
{
    require_valid(config);
    ArenaMask mask = build_tube_arena(config.arena.width, config.arena.height, config.arena.border_rows);
    Rng rng(config.seed);
    Population population = init_population(mask, static_cast<std::size_t>(config.population), rng);
    StimulusSchedule schedule = build_schedule(config, mask);
    return World(std::move(mask), std::move(schedule), config.model, std::move(population), rng);
}

RunRecord run(const ExperimentConfig& config, const std::function<void(const World&, std::int64_t)>& observer)
{
    World world = make_world(config);

    RunRecord record;
    record.config = config;
    record.spacetime = SpaceTimeMatrix(config.sample_interval);

    auto observe = [&](std::int64_t t) {
        sample_if_due(world, t, record.spacetime, config.sample_interval);
        if (config.snapshot_interval > 0 && t % config.snapshot_interval == 0) {
            record.snapshots.push_back({t, world.trail, world.agents});
        }
        if (observer) {
            observer(world, t);
        }
    };

    observe(0);
    for (std::int64_t step = 0; step < config.total_steps; ++step) {
        scheduler_step(world, step);
        observe(step + 1);
    }

    SummaryWindows windows;
    windows.inside = inside_columns(config);
    if (!config.events.empty()) {
        std::int64_t first = config.events.front().start_step;
        std::int64_t last = config.events.front().end_step;
        for (const auto& e : config.events) {
            first = std::min(first, e.start_step);
            last = std::max(last, e.end_step);
        }
        windows.stimulus_start = first;
        windows.stimulus_end = last;
    }
    record.summary = summarize(record.spacetime, windows);
    return record;
}

}  // namespace physarum
