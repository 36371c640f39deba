#include "physarum/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace physarum {

ConfigParseError::ConfigParseError(int line, const std::string& message)
    : ConfigError(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

namespace {

constexpr std::array kKnownKeys = {
    "preset",           "seed",           "width",          "height",
    "border_rows",      "population",     "total_steps",    "sample_interval",
    "snapshot_interval", "sensor_angle",  "sensor_angle_deg", "rotation_angle",
    "rotation_angle_deg", "sensor_offset", "step_size",     "deposit",
    "decay",            "light_sensor_attenuation", "light_trail_factor", "background_rate",
    "stimulus_rate",    "stage_order",    "blocked_turn",   "stimulus_kind",
    "stimulus_start",   "stimulus_end",   "event",
};

// Keys that must be present when no preset supplies defaults. Angles are
// checked separately because either unit is accepted.
constexpr std::array kRequiredWithoutPreset = {
    "seed",          "width",     "height",         "border_rows",
    "population",    "total_steps", "sample_interval", "sensor_offset",
    "step_size",     "deposit",   "decay",          "light_sensor_attenuation",
    "light_trail_factor", "background_rate", "stimulus_rate",
};

struct Entry {
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_known(std::string_view key)
{
    return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

double to_double(const std::string& key, const Entry& e)
{
    double value = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ConfigParseError(e.line, key + ": expected a number, got '" + e.value + "'");
    }
    return value;
}

template <class Int>
Int to_integer(const std::string& key, const Entry& e)
{
    Int value = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ConfigParseError(e.line, key + ": expected an integer, got '" + e.value + "'");
    }
    return value;
}

StimulusKind to_kind(std::string_view word, int line)
{
    if (word == "attractant") {
        return StimulusKind::attractant;
    }
    if (word == "light") {
        return StimulusKind::light;
    }
    throw ConfigParseError(line, "stimulus kind must be 'attractant' or 'light', got '" + std::string(word) + "'");
}

EventSpec to_event(const Entry& e)
{
    std::istringstream in(e.value);
    std::vector<std::string> words;
    for (std::string w; in >> w;) {
        words.push_back(w);
    }
    if (words.size() != 5 && words.size() != 6) {
        throw ConfigParseError(e.line,
                               "event: expected '<kind> <start_step> <end_step> <column_begin> <column_end> [magnitude]'");
    }
    EventSpec spec;
    spec.kind = to_kind(words[0], e.line);
    spec.start_step = to_integer<std::int64_t>("event start_step", {words[1], e.line});
    spec.end_step = to_integer<std::int64_t>("event end_step", {words[2], e.line});
    spec.column_begin = to_integer<int>("event column_begin", {words[3], e.line});
    spec.column_end = to_integer<int>("event column_end", {words[4], e.line});
    if (words.size() == 6) {
        spec.magnitude = to_double("event magnitude", {words[5], e.line});
    }
    return spec;
}

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), ptr);
}

}  // namespace

ExperimentConfig parse_config_text_unchecked(std::string_view text)
{
    std::map<std::string, Entry> scalars;
    std::vector<Entry> event_lines;

    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigParseError(line_no, "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigParseError(line_no, "missing key before '='");
        }
        if (!is_known(key)) {
            throw ConfigParseError(line_no, "unknown key '" + key + "'");
        }
        if (value.empty()) {
            throw ConfigParseError(line_no, key + ": missing value");
        }
        if (key == "event") {
            event_lines.push_back({value, line_no});
            continue;
        }
        if (auto it = scalars.find(key); it != scalars.end()) {
            throw ConfigParseError(line_no, "duplicate key '" + key + "' (first set on line " +
                                                std::to_string(it->second.line) + ")");
        }
        scalars.emplace(key, Entry{value, line_no});
    }

    auto has = [&](const char* key) { return scalars.count(key) != 0; };
    for (const auto* pair : {"sensor_angle", "rotation_angle"}) {
        const std::string deg = std::string(pair) + "_deg";
        if (has(pair) && scalars.count(deg) != 0) {
            throw ConfigParseError(scalars.at(deg).line, "'" + deg + "' conflicts with '" + pair + "'");
        }
    }

    ExperimentConfig config;
    bool from_preset = false;
    if (has("preset")) {
        const auto& e = scalars.at("preset");
        if (e.value == "li") {
            config = preset_li();
        } else if (e.value == "la") {
            config = preset_la();
        } else {
            throw ConfigParseError(e.line, "preset must be 'li' or 'la', got '" + e.value + "'");
        }
        from_preset = true;
    } else {
        std::string missing;
        for (const auto* key : kRequiredWithoutPreset) {
            if (!has(key)) {
                missing += missing.empty() ? "" : ", ";
                missing += key;
            }
        }
        for (const auto* key : {"sensor_angle", "rotation_angle"}) {
            if (!has(key) && scalars.count(std::string(key) + "_deg") == 0) {
                missing += missing.empty() ? "" : ", ";
                missing += key;
            }
        }
        if (!missing.empty()) {
            throw ConfigParseError(0, "missing keys (no preset given): " + missing);
        }
        config = ExperimentConfig{};
        config.events.clear();
    }

    for (const auto& [key, e] : scalars) {
        auto& m = config.model;
        if (key == "preset" || key == "stimulus_kind" || key == "stimulus_start" || key == "stimulus_end") {
            continue;
        } else if (key == "seed") {
            config.seed = to_integer<std::uint64_t>(key, e);
        } else if (key == "width") {
            config.arena.width = to_integer<int>(key, e);
        } else if (key == "height") {
            config.arena.height = to_integer<int>(key, e);
        } else if (key == "border_rows") {
            config.arena.border_rows = to_integer<int>(key, e);
        } else if (key == "population") {
            config.population = to_integer<std::int64_t>(key, e);
        } else if (key == "total_steps") {
            config.total_steps = to_integer<std::int64_t>(key, e);
        } else if (key == "sample_interval") {
            config.sample_interval = to_integer<std::int64_t>(key, e);
        } else if (key == "snapshot_interval") {
            config.snapshot_interval = to_integer<std::int64_t>(key, e);
        } else if (key == "sensor_angle") {
            m.sensor_angle = to_double(key, e);
        } else if (key == "sensor_angle_deg") {
            m.sensor_angle = to_double(key, e) * std::numbers::pi / 180.0;
        } else if (key == "rotation_angle") {
            m.rotation_angle = to_double(key, e);
        } else if (key == "rotation_angle_deg") {
            m.rotation_angle = to_double(key, e) * std::numbers::pi / 180.0;
        } else if (key == "sensor_offset") {
            m.sensor_offset = to_double(key, e);
        } else if (key == "step_size") {
            m.step_size = to_double(key, e);
        } else if (key == "deposit") {
            m.deposit = to_double(key, e);
        } else if (key == "decay") {
            m.decay = to_double(key, e);
        } else if (key == "light_sensor_attenuation") {
            m.light_sensor_attenuation = to_double(key, e);
        } else if (key == "light_trail_factor") {
            m.light_trail_factor = to_double(key, e);
        } else if (key == "background_rate") {
            m.background_rate = to_double(key, e);
        } else if (key == "stimulus_rate") {
            m.stimulus_rate = to_double(key, e);
        } else if (key == "stage_order") {
            if (e.value == "interleaved") {
                m.stage_order = StageOrder::interleaved;
            } else if (e.value == "sense_all_first") {
                m.stage_order = StageOrder::sense_all_first;
            } else {
                throw ConfigParseError(e.line, "stage_order must be 'interleaved' or 'sense_all_first'");
            }
        } else if (key == "blocked_turn") {
            if (e.value == "uniform") {
                m.blocked_turn = BlockedTurn::uniform;
            } else if (e.value == "rotate") {
                m.blocked_turn = BlockedTurn::rotate;
            } else {
                throw ConfigParseError(e.line, "blocked_turn must be 'uniform' or 'rotate'");
            }
        }
    }

    if (!event_lines.empty()) {
        config.events.clear();
        for (const auto& e : event_lines) {
            config.events.push_back(to_event(e));
        }
    } else if (from_preset) {
        // Preset bands follow the (possibly overridden) arena width.
        for (auto& e : config.events) {
            e.column_begin = config.arena.width / 3;
            e.column_end = 2 * config.arena.width / 3;
        }
    }

    if (has("stimulus_kind")) {
        const auto& e = scalars.at("stimulus_kind");
        if (e.value == "none") {
            config.events.clear();
        } else if (config.events.empty()) {
            throw ConfigParseError(e.line, "stimulus_kind needs a preset or event to modify");
        } else {
            config.events.front().kind = to_kind(e.value, e.line);
        }
    }
    for (const auto* key : {"stimulus_start", "stimulus_end"}) {
        if (!has(key)) {
            continue;
        }
        const auto& e = scalars.at(key);
        if (config.events.empty()) {
            throw ConfigParseError(e.line, std::string(key) + " needs a preset or event to modify");
        }
        const auto step = to_integer<std::int64_t>(key, e);
        if (std::string_view(key) == "stimulus_start") {
            config.events.front().start_step = step;
        } else {
            config.events.front().end_step = step;
        }
    }
    return config;
}

ExperimentConfig parse_config_text(std::string_view text)
{
    ExperimentConfig config = parse_config_text_unchecked(text);
    require_valid(config);
    return config;
}

namespace {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

ExperimentConfig parse_config(const std::filesystem::path& path)
{
    return parse_config_text(read_file(path));
}

ExperimentConfig parse_config_unchecked(const std::filesystem::path& path)
{
    return parse_config_text_unchecked(read_file(path));
}

std::string format_config(const ExperimentConfig& config)
{
    const auto& m = config.model;
    std::ostringstream out;
    out << "seed = " << config.seed << '\n';
    out << "width = " << config.arena.width << '\n';
    out << "height = " << config.arena.height << '\n';
    out << "border_rows = " << config.arena.border_rows << '\n';
    out << "population = " << config.population << '\n';
    out << "total_steps = " << config.total_steps << '\n';
    out << "sample_interval = " << config.sample_interval << '\n';
    out << "snapshot_interval = " << config.snapshot_interval << '\n';
    out << "sensor_angle = " << format_double(m.sensor_angle) << '\n';
    out << "rotation_angle = " << format_double(m.rotation_angle) << '\n';
    out << "sensor_offset = " << format_double(m.sensor_offset) << '\n';
    out << "step_size = " << format_double(m.step_size) << '\n';
    out << "deposit = " << format_double(m.deposit) << '\n';
    out << "decay = " << format_double(m.decay) << '\n';
    out << "light_sensor_attenuation = " << format_double(m.light_sensor_attenuation) << '\n';
    out << "light_trail_factor = " << format_double(m.light_trail_factor) << '\n';
    out << "background_rate = " << format_double(m.background_rate) << '\n';
    out << "stimulus_rate = " << format_double(m.stimulus_rate) << '\n';
    out << "stage_order = " << (m.stage_order == StageOrder::interleaved ? "interleaved" : "sense_all_first") << '\n';
    out << "blocked_turn = " << (m.blocked_turn == BlockedTurn::uniform ? "uniform" : "rotate") << '\n';
    for (const auto& e : config.events) {
        out << "event = " << to_string(e.kind) << ' ' << e.start_step << ' ' << e.end_step << ' ' << e.column_begin
            << ' ' << e.column_end;
        if (e.magnitude) {
            out << ' ' << format_double(*e.magnitude);
        }
        out << '\n';
    }
    return out.str();
}

std::string config_hash(const ExperimentConfig& config)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : format_config(config)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf.data(), 16);
}

}  // namespace physarum
