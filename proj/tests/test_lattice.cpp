#include "physarum/lattice.hpp"
#include "physarum/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace physarum;

namespace {

// Straight transcription of the kernel: 3x3 mean, x wrapped, y clipped,
// inhabitable cells read as 0 and written as 0.
TrailLattice oracle_diffuse(const TrailLattice& in, const ArenaMask& mask, double decay)
{
    const int w = in.width();
    const int h = in.height();
    TrailLattice out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.habitable(x, y)) {
                continue;
            }
            double sum = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    int yy = y + dy;
                    if (mask.periodic_y()) {
                        yy = (yy + h) % h;
                    }
                    const int xx = ((x + dx) % w + w) % w;
                    if (yy < 0 || yy >= h || !mask.habitable(xx, yy)) {
                        continue;
                    }
                    sum += static_cast<double>(in.at(xx, yy));
                }
            }
            out.at(x, y) = static_cast<Scalar>(sum / 9.0 * (1.0 - decay));
        }
    }
    return out;
}

TrailLattice random_field(const ArenaMask& mask, Rng& gen)
{
    TrailLattice t(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.habitable(x, y)) {
                t.at(x, y) = static_cast<Scalar>(10.0 * uniform01(gen));
            }
        }
    }
    return t;
}

bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("tube arena of the presets")
{
    const ArenaMask mask = build_tube_arena(300, 100, 10);
    int count = 0;
    int lo = 100;
    int hi = -1;
    for (int y = 0; y < 100; ++y) {
        for (int x = 0; x < 300; ++x) {
            if (mask.habitable(x, y)) {
                ++count;
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
    }
    CHECK(count == 24000);
    CHECK(lo == 10);
    CHECK(hi == 89);
    CHECK(mask.habitable_count() == 24000);
}

TEST_CASE("open edges in y lose mass, a torus does not")
{
    TrailLattice t(5, 5);
    t.at(2, 0) = 9.0;
    CHECK(diffuse_and_decay(t, ArenaMask(5, 5), 0.0).total_mass() == doctest::Approx(6.0));
    CHECK(diffuse_and_decay(t, build_torus(5, 5), 0.0).total_mass() == doctest::Approx(9.0));
}

TEST_CASE("tube arena edge cases")
{
    CHECK(build_tube_arena(10, 10, 0).habitable_count() == 100);
    CHECK_THROWS_AS(build_tube_arena(10, 10, 5), ConfigError);
    CHECK_THROWS_AS(build_tube_arena(2, 10, 1), ConfigError);
    CHECK_THROWS_AS(build_tube_arena(10, 10, -1), ConfigError);
}

TEST_CASE("wrap_x")
{
    CHECK(wrap_x(300.4, 300) == doctest::Approx(0.4));
    CHECK(wrap_x(-0.5, 300) == 299.5);
    CHECK(wrap_x(150.0, 300) == 150.0);
    CHECK(wrap_x(300.0, 300) == 0.0);
    CHECK(wrap_x(-1e-20, 300) == 0.0);
    CHECK(wrap_x(1000.25, 300) == 100.25);
    CHECK(wrap_x(-1000.25, 300) == doctest::Approx(199.75));
    CHECK(wrap_column(-1, 300) == 299);
    CHECK(wrap_column(304, 300) == 4);
}

TEST_CASE("wrap_x always lands in [0, width)")
{
    Rng gen(9);
    for (int i = 0; i < 20000; ++i) {
        const double x = (uniform01(gen) - 0.5) * 4000.0;
        const double r = wrap_x(x, 300);
        REQUIRE(r >= 0.0);
        REQUIRE(r < 300.0);
        const double k = (x - r) / 300.0;
        CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
}

TEST_CASE("impulse on a torus spreads to nine cells")
{
    const ArenaMask mask = build_torus(8, 8);
    TrailLattice t(8, 8);
    t.at(0, 0) = 9.0;
    const TrailLattice out = diffuse_and_decay(t, mask, 0.0);
    int ones = 0;
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            if (out.at(x, y) != 0) {
                CHECK(out.at(x, y) == doctest::Approx(1.0));
                ++ones;
            }
        }
    }
    CHECK(ones == 9);
    CHECK(out.at(7, 7) == doctest::Approx(1.0));
    CHECK(out.total_mass() == doctest::Approx(9.0));
}

TEST_CASE("uniform field decays by (1 - decay)")
{
    const ArenaMask mask = build_torus(6, 5);
    TrailLattice t(6, 5, Scalar(2.5));
    const TrailLattice out = diffuse_and_decay(t, mask, 0.1);
    for (const auto v : out.values()) {
        CHECK(v == doctest::Approx(0.9 * 2.5));
    }
}

TEST_CASE("impulse next to a wall loses a third of its mass")
{
    const ArenaMask mask = build_tube_arena(10, 10, 2);
    TrailLattice t(10, 10);
    t.at(5, 2) = 9.0;
    const TrailLattice out = diffuse_and_decay(t, mask, 0.0);
    int ones = 0;
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            if (out.at(x, y) != 0) {
                CHECK(mask.habitable(x, y));
                CHECK(out.at(x, y) == doctest::Approx(1.0));
                ++ones;
            }
        }
    }
    CHECK(ones == 6);
    CHECK(out.total_mass() == doctest::Approx(6.0));
}

TEST_CASE("decay outside [0, 1] is rejected")
{
    const ArenaMask mask(4, 4);
    const TrailLattice t(4, 4);
    CHECK_THROWS_AS(diffuse_and_decay(t, mask, -0.1), ConfigError);
    CHECK_THROWS_AS(diffuse_and_decay(t, mask, 1.5), ConfigError);
    CHECK_THROWS_AS(diffuse_and_decay(TrailLattice(5, 4), mask, 0.1), ConfigError);
}

TEST_CASE("kernel agrees with the brute-force transcription")
{
    Rng gen(21);
    for (const int border : {-1, 0, 1, 3}) {
        const ArenaMask mask = border < 0 ? build_torus(17, 13) : build_tube_arena(17, 13, border);
        TrailLattice t = random_field(mask, gen);
        // Dirty walls too: the kernel must ignore and clear them.
        t.at(0, 0) = 5.0;
        for (const double decay : {0.0, 0.1, 1.0}) {
            const TrailLattice got = diffuse_and_decay(t, mask, decay);
            const TrailLattice want = oracle_diffuse(t, mask, decay);
            for (std::size_t i = 0; i < got.size(); ++i) {
                REQUIRE(static_cast<double>(got[i]) ==
                        doctest::Approx(static_cast<double>(want[i])).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("into-variant matches the allocating variant")
{
    Rng gen(4);
    const ArenaMask mask = build_tube_arena(20, 12, 2);
    const TrailLattice t = random_field(mask, gen);
    TrailLattice out;
    diffuse_and_decay_into(t, mask, 0.1, out);
    CHECK(out == diffuse_and_decay(t, mask, 0.1));
}

TEST_CASE("property: mass conservation and decay law on a torus")
{
    Rng gen(77);
    const ArenaMask mask = build_torus(23, 19);
    for (int trial = 0; trial < 20; ++trial) {
        const TrailLattice t = random_field(mask, gen);
        const double before = t.total_mass();
        CHECK(rel_close(diffuse_and_decay(t, mask, 0.0).total_mass(), before, 1e-9));
        const double decay = uniform01(gen);
        CHECK(rel_close(diffuse_and_decay(t, mask, decay).total_mass(), (1.0 - decay) * before, 1e-9));
    }
}

TEST_CASE("property: non-negativity and wall clamp")
{
    Rng gen(78);
    const ArenaMask mask = build_tube_arena(31, 20, 4);
    for (int trial = 0; trial < 20; ++trial) {
        TrailLattice t = random_field(mask, gen);
        for (int step = 0; step < 5; ++step) {
            t = diffuse_and_decay(t, mask, 0.1);
            for (int y = 0; y < 20; ++y) {
                for (int x = 0; x < 31; ++x) {
                    REQUIRE(t.at(x, y) >= 0);
                    if (!mask.habitable(x, y)) {
                        REQUIRE(t.at(x, y) == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("property: translation equivariance in x is exact")
{
    Rng gen(79);
    const ArenaMask mask = build_tube_arena(29, 15, 2);
    for (int trial = 0; trial < 10; ++trial) {
        const TrailLattice t = random_field(mask, gen);
        const int k = 1 + static_cast<int>(uniform_below(gen, 28));
        TrailLattice shifted(29, 15);
        for (int y = 0; y < 15; ++y) {
            for (int x = 0; x < 29; ++x) {
                shifted.at((x + k) % 29, y) = t.at(x, y);
            }
        }
        const TrailLattice a = diffuse_and_decay(t, mask, 0.1);
        const TrailLattice b = diffuse_and_decay(shifted, mask, 0.1);
        for (int y = 0; y < 15; ++y) {
            for (int x = 0; x < 29; ++x) {
                REQUIRE(b.at((x + k) % 29, y) == a.at(x, y));
            }
        }
    }
}

TEST_CASE("add_to_region")
{
    const ArenaMask mask(10, 10);
    TrailLattice t(10, 10);
    Region r(10, 10);
    for (int x = 0; x < 5; ++x) {
        r.insert(x, 3);
    }
    add_to_region(t, r, 0);
    CHECK(t.total_mass() == 0.0);
    add_to_region(t, r, Scalar(0.1));
    CHECK(t.total_mass() == doctest::Approx(0.5));
    add_to_region(t, r, Scalar(0.1));
    CHECK(t.at(2, 3) == doctest::Approx(0.2));
    CHECK(t.at(2, 4) == 0);
    CHECK_THROWS_AS(add_to_region(t, r, Scalar(-1)), ConfigError);
}

TEST_CASE("scale_region")
{
    TrailLattice t(4, 4, Scalar(4.0));
    Region r(4, 4);
    r.insert(1, 1);
    r.insert(2, 1);
    scale_region(t, r, 1.0);
    CHECK(t.at(1, 1) == 4.0);
    scale_region(t, r, 0.9);
    CHECK(t.at(1, 1) == doctest::Approx(3.6));
    CHECK(t.at(0, 0) == 4.0);
    scale_region(t, r, 0.0);
    CHECK(t.at(2, 1) == 0.0);
    CHECK_THROWS_AS(scale_region(t, r, 1.1), ConfigError);
    CHECK_THROWS_AS(scale_region(t, r, -0.1), ConfigError);
}

TEST_CASE("region basics")
{
    const ArenaMask mask = build_tube_arena(9, 6, 1);
    const Region r = Region::columns(mask, 3, 6);
    CHECK(r.count() == 12);
    CHECK(r.contains(3, 1));
    CHECK_FALSE(r.contains(3, 0));
    CHECK_FALSE(r.contains(6, 2));
    CHECK_FALSE(r.contains(-1, 2));
    CHECK_THROWS_AS(Region(3, 3).insert(3, 0), ConfigError);
    Region u(9, 6);
    u.unite(r);
    CHECK(u == r);
    u.clear();
    CHECK(u.empty());
}

}
