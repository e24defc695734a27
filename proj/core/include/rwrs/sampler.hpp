#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

// Lattice path of a simple symmetric random walk, S_0 = 0.
struct WalkPath {
    std::vector<std::int32_t> positions;  // length n+1, positions[0] = 0

    int steps_count() const { return static_cast<int>(positions.size()) - 1; }
};

// Euler path of a Brownian motion, values[0] = 0, step variance dt.
struct BrownianPath {
    double horizon = 0.0;
    double dt = 0.0;
    std::vector<double> values;  // length floor(horizon/dt)+1

    int steps() const { return static_cast<int>(values.size()) - 1; }
};

enum class FieldKind { discrete_scenery, continuum_scenery };

enum class SceneryLaw { gaussian, rademacher, centered_exponentialized };

// A reproducible two-sided scenery: either i.i.d. site values on Z (discrete)
// or a two-sided Brownian motion on R (continuum).  Values are deterministic
// functions of (seed, query), so the same field can be re-examined by any
// number of independent walks, in any order, at any resolution.
//
// The continuum field is built by Levy midpoint refinement: unit-spacing
// anchor values are prefix sums of Gaussian increments, and each dyadic
// midpoint adds an independent N(0, 2^-(level+1)) correction keyed by its
// (level, index).  Refining never changes an already-computed dyadic value.
class QuenchedField {
public:
    static QuenchedField discrete(std::uint64_t seed, SceneryLaw law);
    static QuenchedField continuum(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    FieldKind kind() const { return kind_; }
    SceneryLaw scenery_law() const { return law_; }

    // i.i.d. site value at integer x (discrete fields only).
    double site_value(std::int64_t x) const;

    // W(x) with dyadic resolution 2^-level; linear interpolation between
    // the two bracketing dyadic points (continuum fields only).
    double continuum_value(double x, int level) const;

private:
    struct ContinuumCache;

    QuenchedField(std::uint64_t seed, FieldKind kind, SceneryLaw law);

    double anchor(bool negative_side, std::size_t i) const;
    double dyadic_value(bool negative_side, int level, std::uint64_t k) const;

    std::uint64_t seed_ = 0;
    FieldKind kind_ = FieldKind::discrete_scenery;
    SceneryLaw law_ = SceneryLaw::gaussian;
    std::uint64_t site_key_ = 0;
    std::shared_ptr<ContinuumCache> cache_;
};

WalkPath simulate_srw(int n, std::uint64_t seed);
BrownianPath simulate_bm(double horizon, double dt, std::uint64_t seed);

double field_site_value(const QuenchedField& field, std::int64_t x);
double field_continuum_value(const QuenchedField& field, double x, int level);

}  // namespace rwrs
