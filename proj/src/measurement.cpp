#include "physarum/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace physarum {

SpaceTimeMatrix::SpaceTimeMatrix(std::int64_t sample_interval) : sample_interval_(sample_interval)
{
    if (sample_interval < 1) {
        throw std::invalid_argument("sample interval must be >= 1");
    }
}

void SpaceTimeMatrix::append(std::int64_t step, Counts counts)
{
    if (!rows_.empty()) {
        if (counts.size() != rows_.front().size()) {
            throw std::invalid_argument("space-time row width changed");
        }
        if (step != steps_.back() + sample_interval_) {
            throw std::invalid_argument("space-time rows must be exactly one sample interval apart");
        }
    }
    steps_.push_back(step);
    rows_.push_back(std::move(counts));
}

Counts column_density(std::span<const Agent> agents, int width)
{
    Counts counts(static_cast<std::size_t>(width), 0);
    for (const Agent& a : agents) {
        const int column = a.cell_x();
        if (column < 0 || column >= width) {
            throw std::out_of_range("agent x outside [0, width)");
        }
        ++counts[static_cast<std::size_t>(column)];
    }
    return counts;
}

double contrast_index(std::span<const std::int32_t> counts, ColumnRange inside)
{
    const int width = static_cast<int>(counts.size());
    if (inside.begin < 0 || inside.end > width || inside.size() <= 0 || inside.size() >= width) {
        throw std::invalid_argument("inside columns must be a non-empty strict subset of the profile");
    }
    double in_sum = 0.0;
    double out_sum = 0.0;
    for (int x = 0; x < width; ++x) {
        (inside.contains(x) ? in_sum : out_sum) += counts[static_cast<std::size_t>(x)];
    }
    const double in_mean = in_sum / inside.size();
    const double out_mean = out_sum / (width - inside.size());
    if (out_mean == 0.0) {
        return in_mean > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
    }
    return in_mean / out_mean;
}

double uniformity_cv(std::span<const std::int32_t> counts)
{
    if (counts.empty()) {
        throw std::domain_error("coefficient of variation of an empty profile");
    }
    const double n = static_cast<double>(counts.size());
    const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / n;
    if (mean == 0.0) {
        throw std::domain_error("coefficient of variation with zero mean");
    }
    double ss = 0.0;
    for (const auto c : counts) {
        const double d = c - mean;
        ss += d * d;
    }
    return std::sqrt(ss / n) / mean;
}

std::optional<double> mean_cv(const SpaceTimeMatrix& spacetime, std::int64_t from, std::int64_t to)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        const auto step = spacetime.step(r);
        if (step >= from && step < to) {
            sum += uniformity_cv(spacetime.counts(r));
            ++n;
        }
    }
    if (n == 0) {
        return std::nullopt;
    }
    return sum / static_cast<double>(n);
}

std::optional<std::int64_t> recovery_step(const SpaceTimeMatrix& spacetime, std::int64_t stimulus_end,
                                          double baseline_cv, double factor, int persistence)
{
    if (!(factor >= 1.0)) {
        throw std::invalid_argument("recovery factor must be >= 1");
    }
    if (persistence < 1) {
        throw std::invalid_argument("recovery persistence must be >= 1");
    }
    const double threshold = factor * baseline_cv;
    std::size_t run = 0;
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        if (spacetime.step(r) < stimulus_end) {
            continue;
        }
        if (uniformity_cv(spacetime.counts(r)) <= threshold) {
            ++run;
            if (run == static_cast<std::size_t>(persistence)) {
                return spacetime.step(r + 1 - run);
            }
        } else {
            run = 0;
        }
    }
    return std::nullopt;
}

std::vector<double> change_signal(const SpaceTimeMatrix& spacetime, std::int64_t onset_step, std::int64_t window)
{
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        const auto step = spacetime.step(r);
        if (step >= onset_step && step <= onset_step + window) {
            rows.push_back(r);
        }
    }
    if (rows.size() < 2) {
        throw std::invalid_argument("onset window must cover at least two samples");
    }
    const auto width = static_cast<std::size_t>(spacetime.width());
    std::vector<double> signal(width, 0.0);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& prev = spacetime.counts(rows[k - 1]);
        const auto& next = spacetime.counts(rows[k]);
        for (std::size_t x = 0; x < width; ++x) {
            signal[x] += std::abs(static_cast<double>(next[x]) - static_cast<double>(prev[x]));
        }
    }
    return signal;
}

std::vector<int> onset_columns(const SpaceTimeMatrix& spacetime, std::int64_t onset_step, std::int64_t window)
{
    const auto signal = change_signal(spacetime, onset_step, window);
    const int n = static_cast<int>(signal.size());
    auto at = [&](int i) { return signal[static_cast<std::size_t>(wrap_column(i, n))]; };

    // Start scanning just after a strict drop so no plateau straddles the scan start.
    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (at(i) != at(i - 1)) {
            start = i;
            break;
        }
    }
    if (start < 0) {
        return {};
    }

    struct Peak {
        int column;
        double value;
    };
    std::vector<Peak> peaks;
    int i = start;
    for (int visited = 0; visited < n;) {
        int run_end = i;
        while (run_end + 1 < start + n && at(run_end + 1) == at(i)) {
            ++run_end;
        }
        const int len = run_end - i + 1;
        if (at(i - 1) < at(i) && at(run_end + 1) < at(i)) {
            peaks.push_back({wrap_column(i, n), at(i)});
        }
        visited += len;
        i = run_end + 1;
    }

    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        return a.value != b.value ? a.value > b.value : a.column < b.column;
    });
    std::vector<int> out;
    for (std::size_t k = 0; k < peaks.size() && k < 2; ++k) {
        out.push_back(peaks[k].column);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void sample_if_due(const World& world, std::int64_t step, SpaceTimeMatrix& spacetime, std::int64_t interval)
{
    if (interval < 1) {
        throw std::invalid_argument("sample interval must be >= 1");
    }
    if (step % interval == 0) {
        spacetime.append(step, column_density(world.agents, world.mask.width()));
    }
}

RunSummary summarize(const SpaceTimeMatrix& spacetime, const SummaryWindows& windows)
{
    RunSummary summary;
    const bool contrast_defined = windows.inside.size() > 0 && windows.inside.size() < spacetime.width();
    double best_distance = -1.0;
    for (std::size_t r = 0; r < spacetime.rows(); ++r) {
        const auto step = spacetime.step(r);
        const auto& counts = spacetime.counts(r);
        if (contrast_defined) {
            const double c = contrast_index(counts, windows.inside);
            summary.contrast_series.emplace_back(step, c);
            if (std::isfinite(c) && std::abs(c - 1.0) > best_distance) {
                best_distance = std::abs(c - 1.0);
                summary.contrast_peak = c;
                summary.contrast_peak_step = step;
            }
        }
        summary.uniformity_series.emplace_back(step, uniformity_cv(counts));
    }

    summary.baseline_cv = mean_cv(spacetime, windows.baseline_from, windows.baseline_to);
    if (windows.stimulus_end && summary.baseline_cv) {
        summary.recovery_step =
            recovery_step(spacetime, *windows.stimulus_end, *summary.baseline_cv, windows.recovery_factor);
    }
    if (windows.stimulus_start) {
        std::size_t covered = 0;
        for (const auto step : spacetime.steps()) {
            covered += step >= *windows.stimulus_start && step <= *windows.stimulus_start + windows.onset_window;
        }
        if (covered >= 2) {
            summary.onset_columns = onset_columns(spacetime, *windows.stimulus_start, windows.onset_window);
        }
    }
    return summary;
}

}  // namespace physarum
