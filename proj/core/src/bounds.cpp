#include "rwrs/bounds.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "rwrs/parallel.hpp"
#include "rwrs/rng.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }

// E f^2(sigma N) for piecewise-linear f: exact Phi/phi partial moments of the
// piecewise-quadratic f^2.
double mean_square_at_sigma(const StrassenFunction& f, double sigma) {
    if (sigma == 0.0) {
        const double v = f(0.0);
        return v * v;
    }
    auto phi = [&](double x) { return kInvSqrt2Pi / sigma * std::exp(-0.5 * x * x / (sigma * sigma)); };
    const double var = sigma * sigma;
    double acc = f.left_level * f.left_level * normal_cdf(f.knots.front() / sigma);
    acc += f.right_level * f.right_level * (1.0 - normal_cdf(f.knots.back() / sigma));
    for (std::size_t i = 0; i + 1 < f.knots.size(); ++i) {
        const double a = f.knots[i], b = f.knots[i + 1];
        const double s = (f.values[i + 1] - f.values[i]) / (b - a);
        const double alpha = f.values[i] - s * a;
        const double m0 = normal_cdf(b / sigma) - normal_cdf(a / sigma);
        const double m1 = var * (phi(a) - phi(b));
        const double m2 = var * m0 + var * (a * phi(a) - b * phi(b));
        acc += alpha * alpha * m0 + 2.0 * alpha * s * m1 + s * s * m2;
    }
    return acc;
}

double mean_stat(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

BoundReport finish_report(std::vector<double> samples, std::uint64_t seed) {
    BoundReport r;
    r.n_paths = static_cast<long>(samples.size());
    r.lhs_estimate = mean_stat(samples);
    const auto [lo, hi] = stats::bootstrap_ci(samples, mean_stat, kBootstrapLevel,
                                              kBootstrapResamples, rng::derive(seed, 0xB007u));
    r.lhs_lo = lo;
    r.lhs_hi = hi;
    return r;
}

}  // namespace

double s_of_f(const StrassenFunction& f) {
    double sup = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double u = static_cast<double>(i) / 100.0;
        sup = std::max(sup, mean_square_at_sigma(f, std::sqrt(u)));
    }
    return sup;
}

BoundReport check_second_moment(const StrassenFunction& f, const std::string& label,
                                int n_paths, std::uint64_t seed, double dt) {
    if (n_paths < 1) throw std::invalid_argument("check_second_moment: need >= 1 path");
    std::vector<double> sq(static_cast<std::size_t>(n_paths));
    parallel_for(sq.size(), [&](std::size_t i) {
        const auto path = simulate_bm(1.0, dt, rng::derive(seed, i));
        const double v = sample_occupation(f, path);
        sq[i] = v * v;
    });
    BoundReport r = finish_report(std::move(sq), seed);
    r.bound_name = "second_moment";
    r.target = label;
    r.s_f = s_of_f(f);
    r.rhs_value = 16.0 * r.s_f;
    r.satisfied = r.lhs_hi <= r.rhs_value;
    return r;
}

BoundReport check_truncation_f(const StrassenFunction& f, const std::string& label, double n,
                               int n_paths, std::uint64_t seed, double dt, double h) {
    if (n < 0.0) throw std::invalid_argument("check_truncation_f: n must be >= 0");
    if (n_paths < 1) throw std::invalid_argument("check_truncation_f: need >= 1 path");
    std::vector<double> tails(static_cast<std::size_t>(n_paths));
    const std::function<double(double)> g = [&f](double x) { return f(x); };
    parallel_for(tails.size(), [&](std::size_t i) {
        const auto path = simulate_bm(1.0, dt, rng::derive(seed, i));
        const auto grid = bm_local_time(path, h);
        tails[i] = std::abs(stieltjes_pairing(g, grid) - stieltjes_pairing(g, grid, n));
    });
    BoundReport r = finish_report(std::move(tails), seed);
    r.bound_name = "truncation_f";
    r.target = label;
    r.trunc_n = n;
    r.s_f = s_of_f(f);
    r.rhs_value = 4.0 * std::sqrt(2.0 * r.s_f) * std::exp(-n * n / 4.0);
    r.satisfied = r.lhs_hi <= r.rhs_value;
    return r;
}

BoundReport check_truncation_H(const RescaledEdges& w, double n, int n_paths,
                               std::uint64_t seed, double dt, double c_hat, double a_hat) {
    if (n < 0.0) throw std::invalid_argument("check_truncation_H: n must be >= 0");
    if (n_paths < 1) throw std::invalid_argument("check_truncation_H: need >= 1 path");
    std::vector<double> gaps(static_cast<std::size_t>(n_paths));
    parallel_for(gaps.size(), [&](std::size_t i) {
        const auto path = simulate_bm(1.0, dt, rng::derive(seed, i));
        const auto grid = bm_local_time(path, w.h());
        gaps[i] = std::abs(h_lambda(w, grid) - h_lambda(w, grid, n));
    });
    BoundReport r = finish_report(std::move(gaps), seed);
    r.bound_name = "truncation_H";
    r.trunc_n = n;
    r.lambda = w.lambda();
    r.c_hat = c_hat;
    r.a_hat = a_hat;
    r.rhs_value = c_hat * std::exp(-n * n / 4.0) * a_hat;
    r.satisfied = r.lhs_hi <= r.rhs_value;
    return r;
}

std::string to_json_string(const BoundReport& r) {
    nlohmann::json j{
        {"bound_name", r.bound_name},
        {"target", r.target},
        {"lhs_estimate", r.lhs_estimate},
        {"lhs_lo", r.lhs_lo},
        {"lhs_hi", r.lhs_hi},
        {"rhs_value", r.rhs_value},
        {"satisfied", r.satisfied},
        {"n_paths", r.n_paths},
    };
    auto put_if_finite = [&](const char* name, double v) {
        if (std::isfinite(v)) j[name] = v;
    };
    put_if_finite("trunc_n", r.trunc_n);
    put_if_finite("lambda", r.lambda);
    put_if_finite("c_hat", r.c_hat);
    put_if_finite("a_hat", r.a_hat);
    put_if_finite("s_f", r.s_f);
    return j.dump(2);
}

}  // namespace rwrs
