#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace physarum {

#if defined(PHYSARUM_SINGLE_PRECISION_TRAIL)
using Scalar = float;
#else
using Scalar = double;
#endif

/// Raised for any invalid dimension, rate or parameter handed to the simulator.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Which lattice cells agents may occupy. Row-major, y = 0 is the top row.
class ArenaMask {
public:
    /// All cells habitable. Throws ConfigError unless width, height >= 3.
    ArenaMask(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return habitable_.size(); }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }
    bool habitable(int x, int y) const { return habitable_[index(x, y)] != 0; }
    bool habitable(std::size_t i) const { return habitable_[i] != 0; }
    void set_habitable(int x, int y, bool value);

    std::size_t index(int x, int y) const
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    std::size_t habitable_count() const;
    std::span<const std::uint8_t> flags() const { return habitable_; }

    /// Wrap in y as well as x. Off by default; tube arenas never set it.
    bool periodic_y() const { return periodic_y_; }
    void set_periodic_y(bool value) { periodic_y_ = value; }

private:
    int width_;
    int height_;
    bool periodic_y_ = false;
    std::vector<std::uint8_t> habitable_;
};

/// Horizontal tube: `border_rows` inhabitable rows at the top and at the bottom,
/// everything in between habitable. Left and right edges are open (wrapped).
ArenaMask build_tube_arena(int width, int height, int border_rows);

/// Fully habitable lattice wrapped in both directions.
ArenaMask build_torus(int width, int height);

/// A set of lattice cells, stored as a bitmask over the lattice.
class Region {
public:
    Region() = default;
    Region(int width, int height);

    /// Habitable cells of `mask` with x in [x_begin, x_end).
    static Region columns(const ArenaMask& mask, int x_begin, int x_end);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return count_ == 0; }
    std::size_t count() const { return count_; }

    bool contains(int x, int y) const
    {
        return x >= 0 && x < width_ && y >= 0 && y < height_ &&
               bits_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)] != 0;
    }
    bool contains_index(std::size_t i) const { return bits_[i] != 0; }

    /// Throws ConfigError for out-of-bounds coordinates.
    void insert(int x, int y);
    /// Adds every cell of `other`; dimensions must match.
    void unite(const Region& other);
    /// Keeps dimensions, drops every cell.
    void clear();

    std::vector<Cell> cells() const;
    std::span<const std::uint8_t> bits() const { return bits_; }

    friend bool operator==(const Region&, const Region&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Chemoattractant concentration per cell, dense row-major.
class TrailLattice {
public:
    TrailLattice() = default;
    TrailLattice(int width, int height, Scalar fill = Scalar(0));

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    Scalar& at(int x, int y) { return values_[index(x, y)]; }
    Scalar at(int x, int y) const { return values_[index(x, y)]; }
    Scalar& operator[](std::size_t i) { return values_[i]; }
    Scalar operator[](std::size_t i) const { return values_[i]; }

    std::size_t index(int x, int y) const
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    std::span<Scalar> values() { return values_; }
    std::span<const Scalar> values() const { return values_; }

    /// Sum of all cells, accumulated in double.
    double total_mass() const;

    friend bool operator==(const TrailLattice&, const TrailLattice&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Scalar> values_;
};

double wrap_x_slow(double x, int width);

/// x reduced into [0, width) modulo width.
inline double wrap_x(double x, int width)
{
    const double w = static_cast<double>(width);
    if (x >= 0.0 && x < w) {
        return x;
    }
    if (x >= w && x < 2.0 * w) {
        return x - w;
    }
    if (x < 0.0 && x >= -w) {
        const double r = x + w;
        // -1e-20 + w rounds to w.
        return r < w ? r : 0.0;
    }
    return wrap_x_slow(x, width);
}

/// Integer column reduced into [0, width).
inline int wrap_column(int x, int width)
{
    x %= width;
    return x < 0 ? x + width : x;
}

/// One diffusion/decay step: every habitable cell becomes the mean of its 3x3
/// neighbourhood in `trail` (x wrapped, y wrapped only on a periodic_y mask;
/// inhabitable and off-lattice cells count as 0) scaled by (1 - decay). Inhabitable cells come out as 0.
TrailLattice diffuse_and_decay(const TrailLattice& trail, const ArenaMask& mask, double decay);

/// Same as diffuse_and_decay but writes into a caller-owned buffer, which must
/// not alias `trail`. `out` is resized as needed.
void diffuse_and_decay_into(const TrailLattice& trail, const ArenaMask& mask, double decay, TrailLattice& out);

/// Adds `amount` (>= 0) to every cell of `region`.
void add_to_region(TrailLattice& trail, const Region& region, Scalar amount);

/// Multiplies every cell of `region` by `factor` in [0, 1].
void scale_region(TrailLattice& trail, const Region& region, double factor);

}  // namespace physarum
