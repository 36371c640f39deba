#include "physarum/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace physarum {

ArenaMask::ArenaMask(int width, int height) : width_(width), height_(height)
{
    if (width < 3 || height < 3) {
        throw ConfigError("arena must be at least 3x3, got " + std::to_string(width) + "x" + std::to_string(height));
    }
    habitable_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 1);
}

void ArenaMask::set_habitable(int x, int y, bool value)
{
    if (!in_bounds(x, y)) {
        throw ConfigError("arena cell out of bounds");
    }
    habitable_[index(x, y)] = value ? 1 : 0;
}

std::size_t ArenaMask::habitable_count() const
{
    return static_cast<std::size_t>(std::count(habitable_.begin(), habitable_.end(), std::uint8_t{1}));
}

ArenaMask build_tube_arena(int width, int height, int border_rows)
{
    if (border_rows < 0) {
        throw ConfigError("border_rows must be non-negative");
    }
    if (width < 3) {
        throw ConfigError("tube arena width must be at least 3");
    }
    if (height <= 2 * border_rows) {
        throw ConfigError("tube arena height " + std::to_string(height) + " leaves no habitable band with " +
                          std::to_string(border_rows) + " border rows");
    }
    ArenaMask mask(width, height);
    for (int y = 0; y < height; ++y) {
        const bool wall = y < border_rows || y >= height - border_rows;
        if (!wall) {
            continue;
        }
        for (int x = 0; x < width; ++x) {
            mask.set_habitable(x, y, false);
        }
    }
    return mask;
}

ArenaMask build_torus(int width, int height)
{
    ArenaMask mask(width, height);
    mask.set_periodic_y(true);
    return mask;
}

Region::Region(int width, int height)
    : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0)
{
    if (width <= 0 || height <= 0) {
        throw ConfigError("region dimensions must be positive");
    }
}

Region Region::columns(const ArenaMask& mask, int x_begin, int x_end)
{
    Region region(mask.width(), mask.height());
    x_begin = std::max(x_begin, 0);
    x_end = std::min(x_end, mask.width());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = x_begin; x < x_end; ++x) {
            if (mask.habitable(x, y)) {
                region.insert(x, y);
            }
        }
    }
    return region;
}

void Region::insert(int x, int y)
{
    if (x < 0 || x >= width_ || y < 0 || y >= height_) {
        throw ConfigError("region cell out of bounds");
    }
    auto& bit = bits_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)];
    if (bit == 0) {
        bit = 1;
        ++count_;
    }
}

void Region::unite(const Region& other)
{
    if (other.width_ != width_ || other.height_ != height_) {
        throw ConfigError("region dimensions differ");
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (other.bits_[i] != 0 && bits_[i] == 0) {
            bits_[i] = 1;
            ++count_;
        }
    }
}

void Region::clear()
{
    std::fill(bits_.begin(), bits_.end(), std::uint8_t{0});
    count_ = 0;
}

std::vector<Cell> Region::cells() const
{
    std::vector<Cell> out;
    out.reserve(count_);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (contains(x, y)) {
                out.push_back({x, y});
            }
        }
    }
    return out;
}

TrailLattice::TrailLattice(int width, int height, Scalar fill)
    : width_(width), height_(height), values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill)
{
    if (width <= 0 || height <= 0) {
        throw ConfigError("trail lattice dimensions must be positive");
    }
}

double TrailLattice::total_mass() const
{
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double wrap_x_slow(double x, int width)
{
    const double w = static_cast<double>(width);
    double r = std::fmod(x, w);
    if (r < 0.0) {
        r += w;
    }
    if (r >= w) {
        r -= w;
    }
    return r;
}

TrailLattice diffuse_and_decay(const TrailLattice& trail, const ArenaMask& mask, double decay)
{
    TrailLattice out;
    diffuse_and_decay_into(trail, mask, decay, out);
    return out;
}

void diffuse_and_decay_into(const TrailLattice& trail, const ArenaMask& mask, double decay, TrailLattice& out)
{
    if (!(decay >= 0.0 && decay <= 1.0)) {
        throw ConfigError("decay must lie in [0, 1]");
    }
    if (trail.width() != mask.width() || trail.height() != mask.height()) {
        throw ConfigError("trail and mask dimensions differ");
    }
    const int w = trail.width();
    const int h = trail.height();
    if (out.width() != w || out.height() != h) {
        out = TrailLattice(w, h);
    }

    const auto flags = mask.flags();
    const auto in = trail.values();
    const auto uw = static_cast<std::size_t>(w);
    const Scalar keep = static_cast<Scalar>(1.0 - decay);

    // Vertical 3-sums of wall-masked values, one padded row at a time, then a
    // horizontal wrapped 3-sum. The summation order is the same for every cell,
    // so shifting the input in x shifts the output bit-exactly.
    std::vector<Scalar> masked_rows(3 * uw);
    std::vector<Scalar> column_sums(uw + 2);
    const bool wrap_rows = mask.periodic_y();
    auto load_row = [&](int y, Scalar* dst) {
        if (wrap_rows) {
            y = wrap_column(y, h);
        }
        if (y < 0 || y >= h) {
            std::fill(dst, dst + uw, Scalar(0));
            return;
        }
        const std::size_t base = static_cast<std::size_t>(y) * uw;
        for (std::size_t x = 0; x < uw; ++x) {
            dst[x] = flags[base + x] != 0 ? in[base + x] : Scalar(0);
        }
    };

    Scalar* above = masked_rows.data();
    Scalar* centre = masked_rows.data() + uw;
    Scalar* below = masked_rows.data() + 2 * uw;
    load_row(-1, above);
    load_row(0, centre);
    auto result = out.values();
    for (int y = 0; y < h; ++y) {
        load_row(y + 1, below);
        for (std::size_t x = 0; x < uw; ++x) {
            column_sums[x + 1] = above[x] + centre[x] + below[x];
        }
        column_sums[0] = column_sums[uw];
        column_sums[uw + 1] = column_sums[1];
        const std::size_t base = static_cast<std::size_t>(y) * uw;
        for (std::size_t x = 0; x < uw; ++x) {
            const Scalar mean = (column_sums[x] + column_sums[x + 1] + column_sums[x + 2]) / Scalar(9);
            result[base + x] = flags[base + x] != 0 ? mean * keep : Scalar(0);
        }
        Scalar* recycled = above;
        above = centre;
        centre = below;
        below = recycled;
    }
}

void add_to_region(TrailLattice& trail, const Region& region, Scalar amount)
{
    if (!(amount >= Scalar(0))) {
        throw ConfigError("projected amount must be non-negative");
    }
    if (region.width() != trail.width() || region.height() != trail.height()) {
        throw ConfigError("region and trail dimensions differ");
    }
    if (amount == Scalar(0)) {
        return;
    }
    auto values = trail.values();
    const auto bits = region.bits();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (bits[i] != 0) {
            values[i] += amount;
        }
    }
}

void scale_region(TrailLattice& trail, const Region& region, double factor)
{
    if (!(factor >= 0.0 && factor <= 1.0)) {
        throw ConfigError("scale factor must lie in [0, 1]");
    }
    if (region.width() != trail.width() || region.height() != trail.height()) {
        throw ConfigError("region and trail dimensions differ");
    }
    auto values = trail.values();
    const auto bits = region.bits();
    const auto f = static_cast<Scalar>(factor);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (bits[i] != 0) {
            values[i] *= f;
        }
    }
}

}  // namespace physarum
