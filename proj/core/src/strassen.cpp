#include "rwrs/strassen.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rwrs/functionals.hpp"

namespace rwrs {

StrassenFunction::StrassenFunction(std::vector<double> k, std::vector<double> v)
    : knots(std::move(k)), values(std::move(v)) {
    if (knots.empty() || knots.size() != values.size())
        throw std::invalid_argument("StrassenFunction: knots/values size mismatch");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i - 1] < knots[i]))
            throw std::invalid_argument("StrassenFunction: knots must be strictly increasing");
    if (std::find(knots.begin(), knots.end(), 0.0) == knots.end())
        throw std::invalid_argument("StrassenFunction: knots must contain 0");
    left_level = values.front();
    right_level = values.back();
}

double StrassenFunction::operator()(double x) const {
    if (x <= knots.front()) return left_level;
    if (x >= knots.back()) return right_level;
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
    const double w = (x - knots[i]) / (knots[i + 1] - knots[i]);
    return values[i] + w * (values[i + 1] - values[i]);
}

double StrassenFunction::derivative_right(double x) const {
    if (x < knots.front() || x >= knots.back()) return 0.0;
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin());
    // knots[i-1] <= x < knots[i]; at a knot this picks the segment to its right.
    return (values[i] - values[i - 1]) / (knots[i] - knots[i - 1]);
}

double StrassenFunction::antiderivative(double x) const {
    const double a = std::min(x, 0.0), b = std::max(x, 0.0);
    double area = 0.0;
    double lo = a;
    const auto first_inside =
        std::upper_bound(knots.begin(), knots.end(), a);
    for (auto it = first_inside; it != knots.end() && *it < b; ++it) {
        area += 0.5 * ((*this)(lo) + (*this)(*it)) * (*it - lo);
        lo = *it;
    }
    area += 0.5 * ((*this)(lo) + (*this)(b)) * (b - lo);
    return x >= 0.0 ? area : -area;
}

double energy(const StrassenFunction& f) {
    double e = 0.0;
    for (std::size_t i = 1; i < f.knots.size(); ++i) {
        const double dx = f.knots[i] - f.knots[i - 1];
        const double s = (f.values[i] - f.values[i - 1]) / dx;
        e += s * s * dx;
    }
    return e;
}

bool is_in_Kstar(const StrassenFunction& f, double tol) {
    if (tol < 0.0) throw std::invalid_argument("is_in_Kstar: tol must be >= 0");
    return std::abs(f(0.0)) <= 1e-12 && energy(f) <= 1.0 + tol;
}

StrassenFunction zero_function() { return StrassenFunction({0.0}, {0.0}); }

StrassenFunction tent_ramp() { return StrassenFunction({0.0, 1.0}, {0.0, 1.0}); }

StrassenFunction neg_tent_ramp() { return StrassenFunction({0.0, 1.0}, {0.0, -1.0}); }

StrassenFunction symmetric_hat() {
    const double c = 1.0 / std::sqrt(2.0);
    return StrassenFunction({-1.0, 0.0, 1.0}, {c, 0.0, c});
}

StrassenFunction two_sided_ramp() {
    return StrassenFunction({-1.0, 0.0, 1.0}, {-0.5, 0.0, 0.5});
}

StrassenFunction clipped_identity() {
    return StrassenFunction({-1.0, 0.0, 1.0}, {-1.0, 0.0, 1.0});
}

StrassenFunction constant_stub(double c) {
    StrassenFunction f({0.0}, {c});
    return f;
}

const std::vector<NamedTarget>& target_dictionary() {
    static const std::vector<NamedTarget> dict = {
        {"zero", zero_function()},
        {"tent_ramp", tent_ramp()},
        {"neg_tent_ramp", neg_tent_ramp()},
        {"symmetric_hat", symmetric_hat()},
        {"two_sided_ramp", two_sided_ramp()},
    };
    return dict;
}

const StrassenFunction& target_by_name(const std::string& name) {
    for (const auto& t : target_dictionary())
        if (t.name == name) return t.f;
    throw std::invalid_argument("unknown target: " + name);
}

SceneryProfile profile_from_continuum(const QuenchedField& field, double min_spacing) {
    if (field.kind() != FieldKind::continuum_scenery)
        throw std::invalid_argument("profile_from_continuum: need a continuum scenery");
    const int level = dyadic_level_for_spacing(min_spacing);
    return SceneryProfile([field, level](double x) { return field.continuum_value(x, level); });
}

SceneryProfile profile_from_function(std::function<double(double)> fn) {
    return SceneryProfile(std::move(fn));
}

namespace {

void check_window(double lambda, double lo, double hi, double step) {
    if (!(lambda > kMinRescaleTime))
        throw std::domain_error("rescaled profile: lambda must exceed e^e");
    if (!(lo < 0.0 && 0.0 < hi)) throw std::invalid_argument("window must straddle 0");
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
}

}  // namespace

RescaledProfile rescale_profile(const SceneryProfile& w, double lambda,
                                double window_lo, double window_hi, double step) {
    check_window(lambda, window_lo, window_hi, step);
    RescaledProfile p;
    p.lambda = lambda;
    p.window_lo = window_lo;
    p.window_hi = window_hi;
    p.step = step;
    p.k_lo = static_cast<std::int64_t>(std::ceil(window_lo / step - 1e-9));
    const auto k_hi = static_cast<std::int64_t>(std::floor(window_hi / step + 1e-9));
    const double denom = std::sqrt(2.0 * lambda * std::log(std::log(lambda)));
    p.samples.reserve(static_cast<std::size_t>(k_hi - p.k_lo) + 1);
    for (std::int64_t k = p.k_lo; k <= k_hi; ++k)
        p.samples.push_back(w(lambda * (static_cast<double>(k) * step)) / denom);
    return p;
}

RescaledProfile rescale_profile(const QuenchedField& field, double lambda,
                                double window_lo, double window_hi, double step) {
    return rescale_profile(profile_from_continuum(field, lambda * step), lambda,
                           window_lo, window_hi, step);
}

double sup_distance(const RescaledProfile& profile, const StrassenFunction& f) {
    double d = 0.0;
    for (std::size_t i = 0; i < profile.samples.size(); ++i)
        d = std::max(d, std::abs(profile.samples[i] - f(profile.t_at(i))));
    return d;
}

StrassenFunction extend_constant(const StrassenFunction& f, double n) {
    if (n < 0.0) throw std::invalid_argument("extend_constant: n must be >= 0");
    if (n == 0.0) return constant_stub(f(0.0));
    std::vector<double> k, v;
    k.push_back(-n);
    v.push_back(f(-n));
    for (std::size_t i = 0; i < f.knots.size(); ++i) {
        if (f.knots[i] > -n && f.knots[i] < n) {
            k.push_back(f.knots[i]);
            v.push_back(f.values[i]);
        }
    }
    k.push_back(n);
    v.push_back(f(n));
    return StrassenFunction(std::move(k), std::move(v));
}

double uniform_lil_statistic(const SceneryProfile& w, double lambda,
                             double window_lo, double window_hi, double step) {
    check_window(lambda, window_lo, window_hi, step);
    const double denom = std::sqrt(2.0 * lambda * std::log(std::log(lambda)));
    const auto k_lo = static_cast<std::int64_t>(std::ceil(window_lo / step - 1e-9));
    const auto k_hi = static_cast<std::int64_t>(std::floor(window_hi / step + 1e-9));
    double stat = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        if (k == 0) continue;
        const double t = static_cast<double>(k) * step;
        const double at = std::abs(t);
        const double wl = w(lambda * t) / denom;
        stat = std::max(stat, std::abs(wl) / std::sqrt(at * std::log(std::log(at + 1.0 / at + 36.0))));
    }
    return stat;
}

double uniform_lil_statistic(const QuenchedField& field, double lambda,
                             double window_lo, double window_hi, double step) {
    return uniform_lil_statistic(profile_from_continuum(field, lambda * step), lambda,
                                 window_lo, window_hi, step);
}

void write_strassen_csv(const StrassenFunction& f, std::ostream& out) {
    out << std::setprecision(17);
    out << "left_level,right_level\n" << f.left_level << ',' << f.right_level << '\n';
    out << "knot,value\n";
    for (std::size_t i = 0; i < f.knots.size(); ++i)
        out << f.knots[i] << ',' << f.values[i] << '\n';
}

StrassenFunction read_strassen_csv(std::istream& in) {
    auto expect_header = [&](const char* want) {
        std::string line;
        if (!std::getline(in, line) || line != want)
            throw std::runtime_error(std::string("profile csv: expected header ") + want);
    };
    expect_header("left_level,right_level");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("profile csv: missing levels row");
    std::istringstream levels(line);
    double ll = 0.0, rl = 0.0;
    char comma = 0;
    if (!(levels >> ll >> comma >> rl) || comma != ',')
        throw std::runtime_error("profile csv: bad levels row");
    expect_header("knot,value");
    std::vector<double> k, v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double kk = 0.0, vv = 0.0;
        if (!(row >> kk >> comma >> vv) || comma != ',')
            throw std::runtime_error("profile csv: bad knot row");
        k.push_back(kk);
        v.push_back(vv);
    }
    StrassenFunction f(std::move(k), std::move(v));
    if (std::abs(f.left_level - ll) > 1e-12 || std::abs(f.right_level - rl) > 1e-12)
        throw std::runtime_error("profile csv: outside levels disagree with boundary knots");
    return f;
}

}  // namespace rwrs
