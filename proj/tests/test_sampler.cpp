#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "rwrs/sampler.hpp"

using namespace rwrs;

TEST_CASE("walk with zero steps is the single origin point") {
    const auto p = simulate_srw(0, 99);
    REQUIRE(p.positions.size() == 1);
    CHECK(p.positions[0] == 0);
    CHECK(p.steps_count() == 0);
}

TEST_CASE("walk increments are +-1 and deterministic in seed") {
    const auto p = simulate_srw(1000, 7);
    const auto q = simulate_srw(1000, 7);
    const auto r = simulate_srw(1000, 8);
    CHECK(p.positions == q.positions);
    CHECK(p.positions != r.positions);
    for (std::size_t i = 1; i < p.positions.size(); ++i)
        CHECK(std::abs(p.positions[i] - p.positions[i - 1]) == 1);
}

TEST_CASE("mean endpoint of length-100 walks matches the CLT scale") {
    const int reps = 100000, n = 100;
    double acc = 0.0;
    for (int s = 0; s < reps; ++s) acc += simulate_srw(n, static_cast<std::uint64_t>(s)).positions.back();
    // S_n has mean 0, variance n.
    CHECK(std::abs(acc / reps) < 3.0 * std::sqrt(double(n)) / std::sqrt(double(reps)));
}

TEST_CASE("single-increment brownian path is one standard gaussian") {
    const auto p = simulate_bm(1.0, 1.0, 5);
    REQUIRE(p.values.size() == 2);
    CHECK(p.values[0] == 0.0);
    const int reps = 10000;
    double m2 = 0.0;
    for (int s = 0; s < reps; ++s) {
        const double g = simulate_bm(1.0, 1.0, static_cast<std::uint64_t>(s)).values[1];
        m2 += g * g;
    }
    CHECK(std::abs(m2 / reps - 1.0) < 0.05);
}

TEST_CASE("brownian sampler rejects bad horizons and steps") {
    CHECK_THROWS_AS(simulate_bm(0.0, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_bm(-1.0, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_bm(1.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_bm(1.0, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_bm(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("brownian path length follows floor(T/dt)+1 including the 1e-4 case") {
    CHECK(simulate_bm(1.0, 1e-4, 3).values.size() == 10001);
    CHECK(simulate_bm(0.5, 0.1, 3).values.size() == 6);
}

TEST_CASE("discrete scenery is reproducible, lawful, and unit variance") {
    const auto f = QuenchedField::discrete(404, SceneryLaw::rademacher);
    CHECK(f.site_value(12) == f.site_value(12));
    CHECK(f.site_value(-3) == f.site_value(-3));
    for (std::int64_t x = -200; x <= 200; ++x) {
        const double v = f.site_value(x);
        CHECK((v == 1.0 || v == -1.0));
    }
    for (const auto law :
         {SceneryLaw::gaussian, SceneryLaw::rademacher, SceneryLaw::centered_exponentialized}) {
        const auto g = QuenchedField::discrete(808, law);
        double m1 = 0.0, m2 = 0.0;
        const std::int64_t half = 100000;
        for (std::int64_t x = -half; x <= half; ++x) {
            const double v = g.site_value(x);
            m1 += v;
            m2 += v * v;
        }
        const double n = static_cast<double>(2 * half + 1);
        m1 /= n;
        m2 = m2 / n - m1 * m1;
        CHECK(std::abs(m1) < 0.02);
        CHECK(std::abs(m2 - 1.0) < 0.02);
    }
}

TEST_CASE("kind mismatches are rejected") {
    const auto d = QuenchedField::discrete(1, SceneryLaw::gaussian);
    const auto c = QuenchedField::continuum(1);
    CHECK_THROWS_AS(d.continuum_value(0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(c.site_value(2), std::invalid_argument);
    CHECK(field_site_value(d, 5) == d.site_value(5));
    CHECK(field_continuum_value(c, 0.5, 4) == c.continuum_value(0.5, 4));
}

TEST_CASE("continuum field starts at 0 and is stable under refinement") {
    const auto w = QuenchedField::continuum(2024);
    CHECK(w.continuum_value(0.0, 10) == 0.0);
    // Dyadic points keep their value when the query level increases.
    CHECK(w.continuum_value(0.25, 2) == w.continuum_value(0.25, 6));
    CHECK(w.continuum_value(0.375, 3) == w.continuum_value(0.375, 9));
    CHECK(w.continuum_value(-1.5, 1) == w.continuum_value(-1.5, 7));
    CHECK(w.continuum_value(3.0, 0) == w.continuum_value(3.0, 12));
}

TEST_CASE("continuum field is independent of query order") {
    const auto a = QuenchedField::continuum(55);
    const auto b = QuenchedField::continuum(55);
    const double xa1 = a.continuum_value(2.7, 6);
    const double xa2 = a.continuum_value(0.3, 6);
    const double xb2 = b.continuum_value(0.3, 6);
    const double xb1 = b.continuum_value(2.7, 6);
    CHECK(xa1 == xb1);
    CHECK(xa2 == xb2);
}

TEST_CASE("continuum increments are stationary gaussian and independent") {
    const int reps = 10000;
    double var12 = 0.0, cov = 0.0, var_neg = 0.0, cov_sides = 0.0;
    for (int s = 0; s < reps; ++s) {
        const auto w = QuenchedField::continuum(static_cast<std::uint64_t>(1000 + s));
        const double i01 = w.continuum_value(1.0, 0);
        const double i12 = w.continuum_value(2.0, 0) - w.continuum_value(1.0, 0);
        const double wneg = w.continuum_value(-1.0, 0);
        var12 += i12 * i12;
        cov += i01 * i12;
        var_neg += wneg * wneg;
        cov_sides += i01 * wneg;
    }
    CHECK(std::abs(var12 / reps - 1.0) < 0.05);
    CHECK(std::abs(cov / reps) < 0.03);
    CHECK(std::abs(var_neg / reps - 1.0) < 0.05);
    CHECK(std::abs(cov_sides / reps) < 0.03);
}

TEST_CASE("midpoint refinement adds the right conditional variance") {
    // W(0.5) - (W(0)+W(1))/2 is N(0, 1/4) and independent across seeds.
    const int reps = 10000;
    double m2 = 0.0;
    for (int s = 0; s < reps; ++s) {
        const auto w = QuenchedField::continuum(static_cast<std::uint64_t>(77000 + s));
        const double bridge = w.continuum_value(0.5, 1) -
                              0.5 * (w.continuum_value(0.0, 0) + w.continuum_value(1.0, 0));
        m2 += bridge * bridge;
    }
    CHECK(std::abs(m2 / reps - 0.25) < 0.02);
}
