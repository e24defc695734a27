#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rwrs/local_time.hpp"

using namespace rwrs;

namespace {

WalkPath make_walk(std::vector<std::int32_t> pos) {
    WalkPath p;
    p.positions = std::move(pos);
    return p;
}

BrownianPath frozen_path(double horizon, double dt) {
    BrownianPath p;
    p.horizon = horizon;
    p.dt = dt;
    p.values.assign(static_cast<std::size_t>(std::llround(horizon / dt)) + 1, 0.0);
    return p;
}

}  // namespace

TEST_CASE("walk visit counts match hand counts") {
    const auto g = walk_local_time(make_walk({0, 1, 0, -1}));
    CHECK(g.h == 1.0);
    CHECK(g.mass_at_bin(1) == 1.0);
    CHECK(g.mass_at_bin(0) == 1.0);
    CHECK(g.mass_at_bin(-1) == 1.0);
    CHECK(g.elapsed == 3.0);
    CHECK(sup_local_time(g) == 1.0);

    const auto g2 = walk_local_time(make_walk({0, 1, 2, 1}));
    CHECK(g2.mass_at_bin(1) == 2.0);
    CHECK(g2.mass_at_bin(2) == 1.0);
    CHECK(g2.mass_at_bin(0) == 0.0);  // S_0 does not count
    CHECK(sup_local_time(g2) == 2.0);
}

TEST_CASE("walk occupation sums to the step count") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto g = walk_local_time(simulate_srw(5000, seed));
        const double total = std::accumulate(g.masses.begin(), g.masses.end(), 0.0) * g.h;
        CHECK(total == 5000.0);
        for (double m : g.masses) CHECK(m >= 0.0);
    }
}

TEST_CASE("frozen path concentrates all mass in the origin bin") {
    const double h = 0.02;
    const auto g = bm_local_time(frozen_path(1.0, 1e-3), h);
    REQUIRE(g.masses.size() == 1);
    CHECK(g.mass_at(0.0) == doctest::Approx(1.0 / h));
    CHECK(g.mass_at(0.0) * h == doctest::Approx(1.0));
    CHECK(sup_local_time(g) == doctest::Approx(1.0 / h));
    CHECK(g.support_min == 0.0);
    CHECK(g.support_max == 0.0);
}

TEST_CASE("brownian occupation integrates to the horizon") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto path = simulate_bm(1.0, 1e-3, seed);
        const auto g = bm_local_time(path, 0.02);
        const double total = std::accumulate(g.masses.begin(), g.masses.end(), 0.0) * g.h;
        CHECK(std::abs(total - 1.0) <= 1e-3 + 1e-12);
        // pigeonhole: sup >= total mass / support width
        const double width = g.support_max - g.support_min;
        CHECK(sup_local_time(g) >= total / (width + g.h) - 1e-12);
    }
}

TEST_CASE("bad bin widths are rejected") {
    CHECK_THROWS_AS(bm_local_time(frozen_path(1.0, 0.1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bm_local_time(frozen_path(1.0, 0.1), -1.0), std::invalid_argument);
}

TEST_CASE("origin local time at horizon 1 averages to sqrt(2/pi)") {
    // L_1(0) has the law of |N(0,1)|, mean sqrt(2/pi) ~ 0.7979.
    const int reps = 10000;
    double acc = 0.0;
    for (int s = 0; s < reps; ++s) {
        const auto path = simulate_bm(1.0, 1e-4, static_cast<std::uint64_t>(140000 + s));
        acc += bm_local_time(path, 0.02).mass_at(0.0);
    }
    CHECK(std::abs(acc / reps - std::sqrt(2.0 / M_PI)) < 0.02);
}

TEST_CASE("halving the bin width moves the l2 mass only slightly") {
    double drift = 0.0;
    const int reps = 20;
    for (int s = 0; s < reps; ++s) {
        const auto path = simulate_bm(1.0, 1e-4, static_cast<std::uint64_t>(150000 + s));
        drift += std::abs(local_time_l2(bm_local_time(path, 0.02)) -
                          local_time_l2(bm_local_time(path, 0.01)));
    }
    CHECK(drift / reps < 0.05);
}
