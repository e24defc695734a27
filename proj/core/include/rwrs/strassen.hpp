#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rwrs/sampler.hpp"

namespace rwrs {

// Continuous piecewise-linear function, constant outside its knot range, used
// both for members of the limit class (f(0)=0, energy <= 1) and for test
// stubs that deliberately violate membership; membership itself is checked by
// is_in_Kstar, not by the representation.
struct StrassenFunction {
    std::vector<double> knots;   // strictly increasing, containing 0
    std::vector<double> values;  // same length as knots
    double left_level = 0.0;     // value for x <= knots.front()
    double right_level = 0.0;    // value for x >= knots.back()

    StrassenFunction() = default;
    StrassenFunction(std::vector<double> k, std::vector<double> v);

    double operator()(double x) const;
    // Slope at x; at a knot the right segment's slope, zero outside the range.
    double derivative_right(double x) const;
    // F(x) = int_0^x f(u) du, exact (piecewise quadratic).
    double antiderivative(double x) const;
};

double energy(const StrassenFunction& f);
bool is_in_Kstar(const StrassenFunction& f, double tol);

// Shipped target dictionary
StrassenFunction zero_function();
StrassenFunction tent_ramp();      // min(x^+, 1); energy 1
StrassenFunction neg_tent_ramp();  // -min(x^+, 1); energy 1
StrassenFunction symmetric_hat();  // |x|/sqrt(2) clipped at |x|=1; energy 1
StrassenFunction two_sided_ramp(); // x/2 clipped to [-1,1]; energy 1/2
StrassenFunction clipped_identity();  // x clipped to [-1,1]; energy 2 (not a member)
StrassenFunction constant_stub(double c);  // f == c everywhere (not a member)

struct NamedTarget {
    std::string name;
    StrassenFunction f;
};
const std::vector<NamedTarget>& target_dictionary();
const StrassenFunction& target_by_name(const std::string& name);

// A scenery viewed as a real function x -> W(x): continuum fields, discrete
// cumulative profiles, or deterministic stubs, behind one call signature.
class SceneryProfile {
public:
    SceneryProfile() : fn_([](double) { return 0.0; }) {}
    explicit SceneryProfile(std::function<double(double)> fn) : fn_(std::move(fn)) {}
    double operator()(double x) const { return fn_(x); }

private:
    std::function<double(double)> fn_;
};

// min_spacing is the finest x-distance the caller will probe; the dyadic
// refinement level is chosen so interpolation error is negligible at it.
SceneryProfile profile_from_continuum(const QuenchedField& field, double min_spacing);
SceneryProfile profile_from_function(std::function<double(double)> fn);

// W_lambda(t) = W(lambda t) / sqrt(2 lambda lnln lambda) sampled on a step grid.
struct RescaledProfile {
    double lambda = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    double step = 0.0;
    std::int64_t k_lo = 0;  // first sample sits at t = k_lo * step
    std::vector<double> samples;

    double t_at(std::size_t i) const {
        return (static_cast<double>(k_lo) + static_cast<double>(i)) * step;
    }
};

RescaledProfile rescale_profile(const SceneryProfile& w, double lambda,
                                double window_lo, double window_hi, double step);
RescaledProfile rescale_profile(const QuenchedField& field, double lambda,
                                double window_lo, double window_hi, double step);

double sup_distance(const RescaledProfile& profile, const StrassenFunction& f);

// Restrict f to [-n, n] and continue it constant outside; energy never grows.
StrassenFunction extend_constant(const StrassenFunction& f, double n);

// sup over grid t != 0 of |W_lambda(t)| / sqrt(|t| lnln(|t| + 1/|t| + 36)).
double uniform_lil_statistic(const SceneryProfile& w, double lambda,
                             double window_lo, double window_hi, double step);
double uniform_lil_statistic(const QuenchedField& field, double lambda,
                             double window_lo, double window_hi, double step);

void write_strassen_csv(const StrassenFunction& f, std::ostream& out);
StrassenFunction read_strassen_csv(std::istream& in);

}  // namespace rwrs
