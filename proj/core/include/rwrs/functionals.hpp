#pragma once

#include <functional>

#include "rwrs/local_time.hpp"
#include "rwrs/sampler.hpp"

namespace rwrs {

// Scaled = raw / sqrt(2 * time^{3/2} * lnln(time)); requires time > e^e so the
// iterated logarithm is positive.
struct RescaledValue {
    double raw = 0.0;
    double time = 0.0;
    double scaled = 0.0;
};

inline constexpr double kMinRescaleTime = 15.154262241479262;  // e^e

// K_n = sum_{i=1..n} xi_{S_i}: the walk's accumulated scenery.  The callable
// overloads exist so tests and controls can inject deterministic sceneries.
double compute_K(const WalkPath& path, const QuenchedField& field);
double compute_K(const WalkPath& path, const std::function<double(std::int64_t)>& site);

// Same value through the local-time inner product sum_x xi_x * l_n(x).
double compute_K_from_local_time(const LocalTimeGrid& grid, const QuenchedField& field);
double compute_K_from_local_time(const LocalTimeGrid& grid,
                                 const std::function<double(std::int64_t)>& site);

// Z_t = int L_t(x) dW(x) as the Riemann-Stieltjes sum over the grid's bins:
// sum_j mass_j * (W(x_{j+1}) - W(x_j)).  W is resolved at dyadic spacing
// <= h/64 so interpolation does not bleed variance out of the increments.
double compute_Z(const LocalTimeGrid& grid, const QuenchedField& field);

int dyadic_level_for_spacing(double h);

RescaledValue rescale(double raw, double time);
double unscale(double scaled, double time);

}  // namespace rwrs
