#include <doctest.h>

#include <cmath>
#include <map>

#include "rwrs/functionals.hpp"

using namespace rwrs;

namespace {

WalkPath make_walk(std::vector<std::int32_t> pos) {
    WalkPath p;
    p.positions = std::move(pos);
    return p;
}

}  // namespace

TEST_CASE("accumulated scenery: hand sum and stub controls") {
    const auto path = make_walk({0, 1, 0, -1});
    CHECK(compute_K(path, [](std::int64_t) { return 0.0; }) == 0.0);
    const std::map<std::int64_t, double> xi{{1, 2.0}, {0, -1.0}, {-1, 3.0}};
    const auto site = [&](std::int64_t x) { return xi.at(x); };
    CHECK(compute_K(path, site) == 4.0);
    CHECK(compute_K_from_local_time(walk_local_time(path), site) == 4.0);
}

TEST_CASE("direct sum and local-time inner product agree on real sceneries") {
    const auto field = QuenchedField::discrete(31, SceneryLaw::gaussian);
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        const auto path = simulate_srw(4000, seed);
        const double direct = compute_K(path, field);
        const double via_lt = compute_K_from_local_time(walk_local_time(path), field);
        CHECK(direct == doctest::Approx(via_lt).epsilon(1e-12));
    }
}

TEST_CASE("rescaling divides by sqrt(2 time^1.5 lnln time) and round-trips") {
    CHECK(rescale(0.0, 100.0).scaled == 0.0);

    const double denom = unscale(1.0, 100.0);
    CHECK(denom == doctest::Approx(55.266257803616505).epsilon(1e-12));
    const auto v = rescale(55.266257803616505, 100.0);
    CHECK(v.scaled == doctest::Approx(1.0).epsilon(1e-12));
    // exact identity: scaled * denominator == raw
    CHECK(v.scaled * denom == doctest::Approx(v.raw).epsilon(1e-13));

    for (double raw : {-3.0, 0.25, 17.0})
        for (double time : {16.0, 100.0, 65536.0})
            CHECK(unscale(rescale(raw, time).scaled, time) == doctest::Approx(raw).epsilon(1e-12));
}

TEST_CASE("rescaling rejects times at or below e^e") {
    CHECK_THROWS_AS(rescale(1.0, 15.0), std::domain_error);
    CHECK_THROWS_AS(rescale(1.0, kMinRescaleTime), std::domain_error);
    CHECK_THROWS_AS(unscale(1.0, 10.0), std::domain_error);
    CHECK_NOTHROW(rescale(1.0, 15.16));
}

TEST_CASE("stieltjes sum over an empty or zero profile vanishes") {
    const auto field = QuenchedField::continuum(9);
    LocalTimeGrid g;
    g.h = 0.02;
    CHECK(compute_Z(g, field) == 0.0);
    g.origin_offset = -2;
    g.masses = {0.0, 0.0, 0.0, 0.0};
    CHECK(compute_Z(g, field) == 0.0);
}

TEST_CASE("single-bin profile pairs mass with one increment of the scenery") {
    const auto field = QuenchedField::continuum(123);
    LocalTimeGrid g;
    g.h = 0.02;
    g.origin_offset = 7;  // bin [0.14, 0.16)
    g.masses = {2.5};
    const int level = dyadic_level_for_spacing(g.h);
    const double expect =
        2.5 * (field.continuum_value(0.16, level) - field.continuum_value(0.14, level));
    CHECK(compute_Z(g, field) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("resolution rule keeps dyadic spacing at or below h/64") {
    CHECK(dyadic_level_for_spacing(0.02) == 12);
    CHECK(std::exp2(-dyadic_level_for_spacing(0.02)) <= 0.02 / 64.0);
    CHECK(dyadic_level_for_spacing(100.0) == 0);
    CHECK_THROWS_AS(dyadic_level_for_spacing(0.0), std::invalid_argument);
}

TEST_CASE("annealed variance of Z_1 matches the occupation l2 mass") {
    // E Z_1^2 = E int L_1^2 dx (= 8/(3 sqrt(2 pi)) ~ 1.0638); both sides estimated.
    const int reps = 10000;
    double zm1 = 0.0, zm2 = 0.0, l2 = 0.0;
    for (int s = 0; s < reps; ++s) {
        const auto path = simulate_bm(1.0, 1e-4, static_cast<std::uint64_t>(160000 + s));
        const auto grid = bm_local_time(path, 0.02);
        const auto field = QuenchedField::continuum(static_cast<std::uint64_t>(860000 + s));
        const double z = compute_Z(grid, field);
        zm1 += z;
        zm2 += z * z;
        l2 += local_time_l2(grid);
    }
    zm1 /= reps;
    const double var_z = zm2 / reps - zm1 * zm1;
    l2 /= reps;
    CHECK(std::abs(var_z - l2) / l2 < 0.05);
    CHECK(std::abs(l2 - 1.0638460810704088) < 0.05);
}
