#pragma once

#include "physarum/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace physarum {

/// Writes `bytes` to `path` through a sibling temporary file and a rename, so
/// readers never observe a partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// `step,c0,...,c<W-1>` header then one integer row per sample, `\n` endings.
/// Throws std::invalid_argument for an empty matrix.
std::string format_density_csv(const SpaceTimeMatrix& spacetime);
void write_density_csv(const SpaceTimeMatrix& spacetime, const std::filesystem::path& path);

/// Binary PGM (P5, maxval 255), one image row per sample, earliest at the top.
/// Counts are min-max scaled over the whole matrix with round-half-up; a
/// constant matrix is mid-grey (128).
std::string encode_spacetime_pgm(const SpaceTimeMatrix& spacetime);
void render_spacetime(const SpaceTimeMatrix& spacetime, const std::filesystem::path& path);

/// Binary PGM of the lattice: habitable cells show the trail min-max scaled
/// over habitable cells (0 when the trail is constant), cells holding an agent
/// are 255, inhabitable cells are 0.
std::string encode_snapshot_pgm(const TrailLattice& trail, const ArenaMask& mask, std::span<const Agent> agents);
void render_snapshot(const TrailLattice& trail, const ArenaMask& mask, std::span<const Agent> agents,
                     const std::filesystem::path& path);

/// Fields of summary.json.
struct SummaryFile {
    std::optional<double> contrast_peak;
    std::optional<std::int64_t> contrast_peak_step;
    std::optional<std::int64_t> recovery_step;
    std::vector<int> onset_columns;
    std::optional<double> baseline_cv;
    std::string config_hash;

    friend bool operator==(const SummaryFile&, const SummaryFile&) = default;
};

SummaryFile summary_file(const RunRecord& record);
std::string format_summary_json(const SummaryFile& summary);
/// Throws std::runtime_error on malformed input or missing fields.
SummaryFile parse_summary_json(std::string_view text);

/// Writes density.csv, spacetime.pgm, summary.json, config.txt and, when the
/// record has them, snapshots/step_<k>.pgm into `dir` (created if needed).
void write_output_bundle(const RunRecord& record, const std::filesystem::path& dir);

}  // namespace physarum
