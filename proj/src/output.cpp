#include "physarum/output.hpp"

#include "physarum/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace physarum {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view bytes)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
    }
}

std::string format_density_csv(const SpaceTimeMatrix& spacetime)
{
    if (spacetime.empty()) {
        throw std::invalid_argument("density CSV of an empty space-time matrix");
    }
    std::string out = "step";
    for (int x = 0; x < spacetime.width(); ++x) {
        out += ",c" + std::to_string(x);
    }
    out += '\n';
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        out += std::to_string(spacetime.step(r));
        for (const auto c : spacetime.counts(r)) {
            out += ',';
            out += std::to_string(c);
        }
        out += '\n';
    }
    return out;
}

void write_density_csv(const SpaceTimeMatrix& spacetime, const fs::path& path)
{
    write_file_atomic(path, format_density_csv(spacetime));
}

namespace {

std::string pgm_header(int width, int height)
{
    return "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
}

// round((v - lo) * 255 / (hi - lo)) with halves rounded up, for integers.
unsigned char scale_count(std::int64_t v, std::int64_t lo, std::int64_t hi)
{
    const std::int64_t range = hi - lo;
    return static_cast<unsigned char>((2 * 255 * (v - lo) + range) / (2 * range));
}

}  // namespace

std::string encode_spacetime_pgm(const SpaceTimeMatrix& spacetime)
{
    if (spacetime.empty()) {
        throw std::invalid_argument("space-time image of an empty matrix");
    }
    std::int64_t lo = spacetime.counts(0).front();
    std::int64_t hi = lo;
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        const auto [mn, mx] = std::minmax_element(spacetime.counts(r).begin(), spacetime.counts(r).end());
        lo = std::min<std::int64_t>(lo, *mn);
        hi = std::max<std::int64_t>(hi, *mx);
    }
    std::string out = pgm_header(spacetime.width(), static_cast<int>(spacetime.rows()));
    out.reserve(out.size() + spacetime.rows() * static_cast<std::size_t>(spacetime.width()));
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        for (const auto c : spacetime.counts(r)) {
            out += static_cast<char>(hi == lo ? 128 : scale_count(c, lo, hi));
        }
    }
    return out;
}

void render_spacetime(const SpaceTimeMatrix& spacetime, const fs::path& path)
{
    write_file_atomic(path, encode_spacetime_pgm(spacetime));
}

std::string encode_snapshot_pgm(const TrailLattice& trail, const ArenaMask& mask, std::span<const Agent> agents)
{
    if (trail.width() != mask.width() || trail.height() != mask.height()) {
        throw std::invalid_argument("trail and mask dimensions differ");
    }
    double lo = 0.0;
    double hi = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < trail.size(); ++i) {
        if (!mask.habitable(i)) {
            continue;
        }
        const double v = static_cast<double>(trail[i]);
        lo = seen ? std::min(lo, v) : v;
        hi = seen ? std::max(hi, v) : v;
        seen = true;
    }

    std::string pixels(trail.size(), '\0');
    if (hi > lo) {
        const double scale = 255.0 / (hi - lo);
        for (std::size_t i = 0; i < trail.size(); ++i) {
            if (mask.habitable(i)) {
                const double v = std::floor((static_cast<double>(trail[i]) - lo) * scale + 0.5);
                pixels[i] = static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0.0, 255.0)));
            }
        }
    }
    for (const Agent& a : agents) {
        const int x = a.cell_x();
        const int y = a.cell_y();
        if (mask.in_bounds(x, y)) {
            pixels[mask.index(x, y)] = static_cast<char>(255);
        }
    }
    return pgm_header(trail.width(), trail.height()) + pixels;
}

void render_snapshot(const TrailLattice& trail, const ArenaMask& mask, std::span<const Agent> agents,
                     const fs::path& path)
{
    write_file_atomic(path, encode_snapshot_pgm(trail, mask, agents));
}

SummaryFile summary_file(const RunRecord& record)
{
    SummaryFile s;
    s.contrast_peak = record.summary.contrast_peak;
    s.contrast_peak_step = record.summary.contrast_peak_step;
    s.recovery_step = record.summary.recovery_step;
    s.onset_columns = record.summary.onset_columns;
    s.baseline_cv = record.summary.baseline_cv;
    s.config_hash = config_hash(record.config);
    return s;
}

namespace {

template <class T>
nlohmann::ordered_json optional_json(const std::optional<T>& v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <class T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    return v.get<T>();
}

}  // namespace

std::string format_summary_json(const SummaryFile& summary)
{
    nlohmann::ordered_json j;
    j["contrast_peak"] = optional_json(summary.contrast_peak);
    j["contrast_peak_step"] = optional_json(summary.contrast_peak_step);
    j["recovery_step"] = optional_json(summary.recovery_step);
    j["onset_columns"] = summary.onset_columns;
    j["baseline_cv"] = optional_json(summary.baseline_cv);
    j["config_hash"] = summary.config_hash;
    return j.dump(2) + "\n";
}

SummaryFile parse_summary_json(std::string_view text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        SummaryFile s;
        s.contrast_peak = optional_field<double>(j, "contrast_peak");
        s.contrast_peak_step = optional_field<std::int64_t>(j, "contrast_peak_step");
        s.recovery_step = optional_field<std::int64_t>(j, "recovery_step");
        s.onset_columns = j.at("onset_columns").get<std::vector<int>>();
        s.baseline_cv = optional_field<double>(j, "baseline_cv");
        s.config_hash = j.at("config_hash").get<std::string>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed summary.json: ") + e.what());
    }
}

void write_output_bundle(const RunRecord& record, const fs::path& dir)
{
    fs::create_directories(dir);
    write_density_csv(record.spacetime, dir / "density.csv");
    render_spacetime(record.spacetime, dir / "spacetime.pgm");
    write_file_atomic(dir / "summary.json", format_summary_json(summary_file(record)));
    write_file_atomic(dir / "config.txt", format_config(record.config));
    if (!record.snapshots.empty()) {
        const ArenaMask mask =
            build_tube_arena(record.config.arena.width, record.config.arena.height, record.config.arena.border_rows);
        fs::create_directories(dir / "snapshots");
        for (const auto& snap : record.snapshots) {
            render_snapshot(snap.trail, mask, snap.agents,
                            dir / "snapshots" / ("step_" + std::to_string(snap.step) + ".pgm"));
        }
    }
}

}  // namespace physarum
