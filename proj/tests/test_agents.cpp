#include "physarum/agents.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

using namespace physarum;

namespace {

// Generator stand-in that returns a fixed word and counts draws.
struct CountingGen {
    using result_type = std::uint64_t;
    std::uint64_t value = 0;
    int draws = 0;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()()
    {
        ++draws;
        return value;
    }
};

constexpr std::uint64_t kTopBit = std::uint64_t(1) << 63;

ModelParams no_stimulus_params()
{
    ModelParams p;
    p.background_rate = 0.0;
    return p;
}

World small_world(const ArenaMask& mask, std::size_t n, ModelParams params, std::uint64_t seed)
{
    Rng gen(seed);
    Population pop = init_population(mask, n, gen);
    StimulusSchedule schedule;
    schedule.background_rate = params.background_rate;
    return World(mask, schedule, params, std::move(pop), gen);
}

}  // namespace

TEST_SUITE("agents") {

TEST_CASE("sense: uniform field")
{
    const ArenaMask mask = build_tube_arena(300, 100, 10);
    TrailLattice t(300, 100);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = mask.habitable(i) ? Scalar(2.0) : Scalar(0);
    }
    const Agent a{150.5, 50.5, 1.0};
    const auto r = sense(a, t, mask, Region{}, ModelParams{});
    CHECK(r.front == 2.0);
    CHECK(r.front_left == 2.0);
    CHECK(r.front_right == 2.0);
}

TEST_CASE("sense: light attenuates only the lit sample")
{
    const ArenaMask mask = build_tube_arena(300, 100, 10);
    TrailLattice t(300, 100, Scalar(4.0));
    Region light(300, 100);
    light.insert(159, 50);
    const Agent a{150.5, 50.5, 0.0};
    const auto r = sense(a, t, mask, light, ModelParams{});
    CHECK(r.front == doctest::Approx(0.4));
    CHECK(r.front_left == 4.0);
    CHECK(r.front_right == 4.0);
}

TEST_CASE("sense: front sensor wraps around the right edge")
{
    const ArenaMask mask = build_tube_arena(300, 100, 10);
    TrailLattice t(300, 100);
    for (int y = 10; y < 90; ++y) {
        t.at(4, y) = 7.0;
    }
    const Agent a{295.0, 50.5, 0.0};
    CHECK(sense(a, t, mask, Region{}, ModelParams{}).front == 7.0);
}

TEST_CASE("sense: orientation of the side sensors and wall reads")
{
    const ArenaMask mask = build_tube_arena(60, 40, 5);
    TrailLattice t(60, 40);
    ModelParams p;
    p.sensor_angle = std::numbers::pi / 2;
    const Agent a{30.5, 20.5, 0.0};
    t.at(30, 29) = 3.0;  // heading + SA points to +y
    t.at(30, 11) = 1.0;  // heading - SA points to -y
    const auto r = sense(a, t, mask, Region{}, p);
    CHECK(r.front_left == 3.0);
    CHECK(r.front_right == 1.0);
    CHECK(r.front == 0.0);

    // Sensor beyond the lattice and sensor on a wall both read 0.
    const Agent near_wall{30.5, 6.5, 3 * std::numbers::pi / 2};
    TrailLattice full(60, 40, Scalar(1.0));
    const auto w = sense(near_wall, full, mask, Region{}, p);
    CHECK(w.front == 0.0);
    const Agent near_edge{30.5, 36.0, std::numbers::pi / 2};
    CHECK(sense(near_edge, full, ArenaMask(60, 40), Region{}, p).front == 0.0);
}

TEST_CASE("decide_rotation rule and random-draw discipline")
{
    const ModelParams p;
    const double ra = p.rotation_angle;
    CountingGen gen;
    CHECK(decide_rotation({5, 1, 1}, p, gen) == 0.0);
    CHECK(decide_rotation({3, 5, 2}, p, gen) == ra);
    CHECK(decide_rotation({3, 2, 5}, p, gen) == -ra);
    CHECK(decide_rotation({2, 2, 2}, p, gen) == 0.0);
    CHECK(decide_rotation({2, 2, 1}, p, gen) == ra);
    CHECK(decide_rotation({5, 5, 5}, p, gen) == 0.0);
    CHECK(gen.draws == 0);

    gen.value = kTopBit;
    CHECK(decide_rotation({1, 5, 5}, p, gen) == ra);
    CHECK(gen.draws == 1);
    gen.value = 0;
    CHECK(decide_rotation({1, 5, 5}, p, gen) == -ra);
    CHECK(gen.draws == 2);
}

TEST_CASE("property: decide_rotation draws iff front is strictly least")
{
    Rng src(12);
    const ModelParams p;
    for (int i = 0; i < 5000; ++i) {
        const SensorReadings r{double(uniform_below(src, 4)), double(uniform_below(src, 4)),
                               double(uniform_below(src, 4))};
        CountingGen gen;
        const double d = decide_rotation(r, p, gen);
        const bool least = r.front < r.front_left && r.front < r.front_right;
        REQUIRE(gen.draws == (least ? 1 : 0));
        REQUIRE((d == 0.0 || std::abs(d) == p.rotation_angle));
    }
}

TEST_CASE("normalize_heading")
{
    CHECK(normalize_heading(0.0) == 0.0);
    CHECK(normalize_heading(-0.5) == doctest::Approx(kTwoPi - 0.5));
    CHECK(normalize_heading(kTwoPi + 0.25) == doctest::Approx(0.25));
    CHECK(normalize_heading(-1e-300) < kTwoPi);
}

TEST_CASE("try_move: free target")
{
    const ArenaMask mask = build_tube_arena(20, 10, 2);
    OccupancyLattice occ(20, 10);
    TrailLattice t(20, 10);
    Agent a{5.5, 5.5, 0.0};
    occ.place(0, 5, 5);
    Rng gen(1);
    CHECK(try_move(a, 0, occ, mask, t, ModelParams{}, gen));
    CHECK(a.x == 6.5);
    CHECK(a.y == 5.5);
    CHECK(occ.occupant(6, 5) == 0);
    CHECK_FALSE(occ.occupied(5, 5));
    CHECK(t.total_mass() == 5.0);
    CHECK(t.at(6, 5) == 5.0);
}

TEST_CASE("try_move: within its own cell")
{
    const ArenaMask mask = build_tube_arena(20, 10, 2);
    OccupancyLattice occ(20, 10);
    TrailLattice t(20, 10);
    ModelParams p;
    p.step_size = 0.25;
    Agent a{5.1, 5.5, 0.0};
    occ.place(0, 5, 5);
    Rng gen(1);
    CHECK(try_move(a, 0, occ, mask, t, p, gen));
    CHECK(occ.occupant(5, 5) == 0);
    CHECK(t.at(5, 5) == 5.0);
}

TEST_CASE("try_move: occupied target and wall are blocked")
{
    const ArenaMask mask = build_tube_arena(20, 10, 2);
    OccupancyLattice occ(20, 10);
    TrailLattice t(20, 10);
    Rng gen(1);

    Agent a{5.5, 5.5, 0.0};
    occ.place(0, 5, 5);
    occ.place(1, 6, 5);
    CHECK_FALSE(try_move(a, 0, occ, mask, t, ModelParams{}, gen));
    CHECK(a.x == 5.5);
    CHECK(a.y == 5.5);
    CHECK(a.heading != 0.0);
    CHECK(a.heading >= 0.0);
    CHECK(a.heading < kTwoPi);
    CHECK(t.total_mass() == 0.0);
    CHECK(occ.occupant(5, 5) == 0);

    Agent b{10.5, 2.5, 3 * std::numbers::pi / 2};
    occ.place(2, 10, 2);
    CHECK_FALSE(try_move(b, 2, occ, mask, t, ModelParams{}, gen));
    CHECK(b.y == 2.5);
    CHECK(t.total_mass() == 0.0);
}

TEST_CASE("try_move: blocked agent turns by +/- RA in rotate mode")
{
    const ArenaMask mask = build_tube_arena(20, 10, 2);
    OccupancyLattice occ(20, 10);
    TrailLattice t(20, 10);
    ModelParams p;
    p.blocked_turn = BlockedTurn::rotate;
    Rng gen(2);
    Agent a{5.5, 2.5, 3 * std::numbers::pi / 2};
    occ.place(0, 5, 2);
    CHECK_FALSE(try_move(a, 0, occ, mask, t, p, gen));
    const double d = std::abs(a.heading - 3 * std::numbers::pi / 2);
    CHECK(d == doctest::Approx(p.rotation_angle));
}

TEST_CASE("try_move wraps across the right edge")
{
    const ArenaMask mask = build_tube_arena(20, 10, 2);
    OccupancyLattice occ(20, 10);
    TrailLattice t(20, 10);
    Agent a{19.5, 5.5, 0.0};
    occ.place(0, 19, 5);
    Rng gen(1);
    CHECK(try_move(a, 0, occ, mask, t, ModelParams{}, gen));
    CHECK(a.x == 0.5);
    CHECK(occ.occupant(0, 5) == 0);
}

TEST_CASE("init_population")
{
    const ArenaMask mask = build_tube_arena(300, 100, 10);
    Rng gen(1);
    CHECK_THROWS_AS(init_population(mask, 24001, gen), ConfigError);

    Rng g1(1);
    const Population one = init_population(mask, 1, g1);
    CHECK(one.agents.size() == 1);
    CHECK(one.occupancy.occupied_count() == 1);

    Rng a(99);
    Rng b(99);
    const Population pa = init_population(mask, 8000, a);
    const Population pb = init_population(mask, 8000, b);
    CHECK(pa.agents == pb.agents);
    CHECK(pa.occupancy == pb.occupancy);

    std::set<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < pa.agents.size(); ++i) {
        const Agent& ag = pa.agents[i];
        REQUIRE(mask.habitable(ag.cell_x(), ag.cell_y()));
        CHECK(ag.x - ag.cell_x() == 0.5);
        CHECK(ag.y - ag.cell_y() == 0.5);
        CHECK(ag.heading >= 0.0);
        CHECK(ag.heading < kTwoPi);
        CHECK(pa.occupancy.occupant(ag.cell_x(), ag.cell_y()) == static_cast<AgentId>(i));
        cells.insert({ag.cell_x(), ag.cell_y()});
    }
    CHECK(cells.size() == 8000);

    Rng full(3);
    CHECK(init_population(mask, 24000, full).occupancy.occupied_count() == 24000);
}

TEST_CASE("occupancy rejects double placement")
{
    OccupancyLattice occ(5, 5);
    occ.place(0, 1, 1);
    CHECK_THROWS_AS(occ.place(1, 1, 1), std::logic_error);
    CHECK_THROWS_AS(occ.relocate(1, 1, 1, 2, 2), std::logic_error);
}

TEST_CASE("property: scheduler keeps the world consistent")
{
    for (const auto order : {StageOrder::interleaved, StageOrder::sense_all_first}) {
        for (const auto turn : {BlockedTurn::uniform, BlockedTurn::rotate}) {
            ModelParams p;
            p.stage_order = order;
            p.blocked_turn = turn;
            World w = small_world(build_tube_arena(40, 20, 3), 300, p, 5);
            for (int step = 0; step < 200; ++step) {
                scheduler_step(w, step);
                REQUIRE(check_world(w).empty());
                REQUIRE(w.agents.size() == 300);
            }
            for (const auto v : w.trail.values()) {
                REQUIRE(v >= 0);
            }
        }
    }
}

TEST_CASE("check_world reports broken invariants")
{
    World w = small_world(build_tube_arena(40, 20, 3), 10, ModelParams{}, 5);
    CHECK(check_world(w).empty());
    w.agents[0].y = 1.5;
    CHECK_FALSE(check_world(w).empty());
}

TEST_CASE("property: deposit accounting on a torus")
{
    ModelParams p = no_stimulus_params();
    p.decay = 0.0;
    for (const std::uint64_t seed : {1u, 2u, 3u}) {
        World w = small_world(build_torus(32, 32), 400, p, seed);
        for (int step = 0; step < 20; ++step) {
            const auto before_agents = w.agents;
            const double before = w.trail.total_mass();
            scheduler_step(w, step);
            int moves = 0;
            for (std::size_t i = 0; i < w.agents.size(); ++i) {
                if (w.agents[i].x != before_agents[i].x || w.agents[i].y != before_agents[i].y) {
                    ++moves;
                }
            }
            const double want = before + moves * p.deposit;
            REQUIRE(std::abs(w.trail.total_mass() - want) <= 1e-9 * want);
        }
    }
}

TEST_CASE("scheduler is deterministic and seed sensitive")
{
    World a = small_world(build_tube_arena(40, 20, 3), 200, ModelParams{}, 8);
    World b = small_world(build_tube_arena(40, 20, 3), 200, ModelParams{}, 8);
    World c = small_world(build_tube_arena(40, 20, 3), 200, ModelParams{}, 9);
    for (int step = 0; step < 100; ++step) {
        scheduler_step(a, step);
        scheduler_step(b, step);
        scheduler_step(c, step);
    }
    CHECK(a.agents == b.agents);
    CHECK(a.trail == b.trail);
    CHECK(a.occupancy == b.occupancy);
    CHECK((a.rng == b.rng));
    CHECK_FALSE(a.agents == c.agents);
}

}
