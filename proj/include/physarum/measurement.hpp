#pragma once

#include "physarum/agents.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace physarum {

using Counts = std::vector<std::int32_t>;

/// Half-open column interval [begin, end).
struct ColumnRange {
    int begin = 0;
    int end = 0;

    int size() const { return end - begin; }
    bool contains(int x) const { return begin <= x && x < end; }
    friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

struct DensityProfile {
    std::int64_t step = 0;
    Counts counts;
};

/// Per-column agent counts sampled at a fixed interval, earliest row first.
class SpaceTimeMatrix {
public:
    SpaceTimeMatrix() = default;
    explicit SpaceTimeMatrix(std::int64_t sample_interval);

    std::int64_t sample_interval() const { return sample_interval_; }
    std::size_t rows() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }
    /// Column count; 0 while empty.
    int width() const { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }

    std::int64_t step(std::size_t row) const { return steps_[row]; }
    const Counts& counts(std::size_t row) const { return rows_[row]; }
    const std::vector<std::int64_t>& steps() const { return steps_; }

    /// Throws std::invalid_argument if the row breaks the fixed width or the
    /// step spacing.
    void append(std::int64_t step, Counts counts);

    friend bool operator==(const SpaceTimeMatrix&, const SpaceTimeMatrix&) = default;

private:
    std::int64_t sample_interval_ = 1;
    std::vector<std::int64_t> steps_;
    std::vector<Counts> rows_;
};

/// counts[k] = number of agents with floor(x) == k. Agents must satisfy 0 <= x < width.
Counts column_density(std::span<const Agent> agents, int width);

/// Mean count inside `inside` over mean count outside it. +infinity when only
/// the outside is empty, NaN when both are. Throws std::invalid_argument unless
/// `inside` is a non-empty strict subset of the columns.
double contrast_index(std::span<const std::int32_t> counts, ColumnRange inside);

/// Population standard deviation over mean. Throws std::domain_error for a
/// zero mean.
double uniformity_cv(std::span<const std::int32_t> counts);

/// Mean uniformity_cv over samples with step in [from, to); nullopt without samples.
std::optional<double> mean_cv(const SpaceTimeMatrix& spacetime, std::int64_t from, std::int64_t to);

inline constexpr int kRecoveryPersistence = 50;

/// Earliest sampled step >= stimulus_end whose CV is <= factor * baseline_cv and
/// stays there for `persistence` consecutive samples (the sample itself
/// included). Throws std::invalid_argument if factor < 1.
std::optional<std::int64_t> recovery_step(const SpaceTimeMatrix& spacetime, std::int64_t stimulus_end,
                                          double baseline_cv, double factor,
                                          int persistence = kRecoveryPersistence);

/// Per-column sum of absolute inter-sample count changes over samples with
/// step in [onset_step, onset_step + window].
std::vector<double> change_signal(const SpaceTimeMatrix& spacetime, std::int64_t onset_step, std::int64_t window);

/// Columns of the two largest local maxima of change_signal, ascending. The
/// signal is treated as periodic in x; a plateau counts as one maximum located
/// at its first column. Constant signals have no maxima. Throws
/// std::invalid_argument when fewer than two samples fall in the window.
std::vector<int> onset_columns(const SpaceTimeMatrix& spacetime, std::int64_t onset_step, std::int64_t window);

/// Appends column_density(world.agents) when step is a multiple of interval.
void sample_if_due(const World& world, std::int64_t step, SpaceTimeMatrix& spacetime, std::int64_t interval);

struct RunSummary {
    std::vector<std::pair<std::int64_t, double>> contrast_series;
    std::vector<std::pair<std::int64_t, double>> uniformity_series;
    std::optional<double> baseline_cv;
    std::optional<std::int64_t> recovery_step;
    std::vector<int> onset_columns;
    /// Contrast sample farthest from 1 (finite samples only).
    std::optional<double> contrast_peak;
    std::optional<std::int64_t> contrast_peak_step;
};

/// Windows used when summarising a run.
struct SummaryWindows {
    ColumnRange inside;
    std::int64_t baseline_from = 500;
    std::int64_t baseline_to = 1000;
    std::optional<std::int64_t> stimulus_start;
    std::optional<std::int64_t> stimulus_end;
    std::int64_t onset_window = 500;
    double recovery_factor = 1.5;
};

RunSummary summarize(const SpaceTimeMatrix& spacetime, const SummaryWindows& windows);

}  // namespace physarum
