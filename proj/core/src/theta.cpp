#include "rwrs/theta.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rwrs/functionals.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/rng.hpp"

namespace rwrs {

double sample_occupation(const StrassenFunction& f, const BrownianPath& path) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k)
        acc += f.derivative_right(path.values[k]);
    return -acc * path.dt;
}

double sample_stieltjes(const StrassenFunction& f, const LocalTimeGrid& grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.masses.size(); ++i) {
        if (grid.masses[i] == 0.0) continue;
        const double center =
            (static_cast<double>(grid.origin_offset + static_cast<std::int64_t>(i)) + 0.5) * grid.h;
        acc += grid.masses[i] * f.derivative_right(center);
    }
    return -acc * grid.h;
}

double sample_ito(const StrassenFunction& f, const BrownianPath& path) {
    // For a constant integrand the stochastic sum telescopes; evaluating it
    // that way keeps the estimator exactly zero instead of rounding noise.
    const bool constant =
        !f.values.empty() &&
        std::all_of(f.values.begin(), f.values.end(),
                    [&](double v) { return v == f.values.front(); }) &&
        f.left_level == f.values.front() && f.right_level == f.values.front();
    double stoch = 0.0;
    if (constant) {
        stoch = f.values.front() * (path.values.back() - path.values.front());
    } else {
        for (std::size_t k = 0; k + 1 < path.values.size(); ++k)
            stoch += f(path.values[k]) * (path.values[k + 1] - path.values[k]);
    }
    return 2.0 * (-f.antiderivative(path.values.back()) + stoch);
}

ThetaSample theta_sample(const StrassenFunction& f, const BrownianPath& path,
                         const LocalTimeGrid& grid, std::uint64_t path_seed) {
    ThetaSample s;
    s.path_seed = path_seed;
    s.value_occupation = sample_occupation(f, path);
    s.value_stieltjes = sample_stieltjes(f, grid);
    s.value_ito = sample_ito(f, path);
    return s;
}

void write_theta_samples_csv(const std::vector<ThetaSample>& samples, std::ostream& out) {
    out << std::setprecision(17) << "path_seed,occ,stielt,ito\n";
    for (const auto& s : samples)
        out << s.path_seed << ',' << s.value_occupation << ',' << s.value_stieltjes << ','
            << s.value_ito << '\n';
}

std::vector<ThetaSample> read_theta_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "path_seed,occ,stielt,ito")
        throw std::runtime_error("theta csv: bad header");
    std::vector<ThetaSample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        ThetaSample s;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(row >> s.path_seed >> c1 >> s.value_occupation >> c2 >> s.value_stieltjes >> c3 >>
              s.value_ito) ||
            c1 != ',' || c2 != ',' || c3 != ',')
            throw std::runtime_error("theta csv: bad row");
        out.push_back(s);
    }
    return out;
}

stats::EmpiricalDistribution theta_law(const StrassenFunction& f, int n_paths,
                                       std::uint64_t seed, double dt) {
    if (n_paths < 1) throw std::invalid_argument("theta_law: need >= 1 path");
    std::vector<double> samples(static_cast<std::size_t>(n_paths));
    parallel_for(samples.size(), [&](std::size_t i) {
        const auto path = simulate_bm(1.0, dt, rng::derive(seed, i));
        samples[i] = sample_occupation(f, path);
    });
    return stats::make_empirical(std::move(samples), "theta_law", seed);
}

RescaledEdges::RescaledEdges(SceneryProfile w, double lambda, double h, double precomputed_range)
    : w_(std::move(w)), lambda_(lambda), h_(h) {
    if (!(lambda > kMinRescaleTime))
        throw std::domain_error("RescaledEdges: lambda must exceed e^e");
    if (h <= 0.0) throw std::invalid_argument("RescaledEdges: h must be > 0");
    denom_ = std::sqrt(2.0 * lambda * std::log(std::log(lambda)));
    const auto half = static_cast<std::int64_t>(std::ceil(precomputed_range / h));
    lo_ = -half;
    vals_.resize(static_cast<std::size_t>(2 * half) + 1);
    for (std::int64_t j = -half; j <= half; ++j)
        vals_[static_cast<std::size_t>(j - lo_)] =
            w_(lambda_ * static_cast<double>(j) * h_) / denom_;
}

double RescaledEdges::at_edge(std::int64_t j) const {
    const std::int64_t i = j - lo_;
    if (i >= 0 && i < static_cast<std::int64_t>(vals_.size()))
        return vals_[static_cast<std::size_t>(i)];
    return w_(lambda_ * static_cast<double>(j) * h_) / denom_;
}

namespace {

// Shared summation-by-parts core; g_at(j) is the integrand at edge j*h.
template <typename G>
double pairing_impl(G&& g_at, const LocalTimeGrid& grid, double truncation) {
    if (grid.masses.empty()) return 0.0;
    if (std::isinf(truncation)) {
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.masses.size(); ++i) {
            if (grid.masses[i] == 0.0) continue;
            const std::int64_t j = grid.first_bin() + static_cast<std::int64_t>(i);
            acc += grid.masses[i] * (g_at(j + 1) - g_at(j));
        }
        return -acc;
    }
    if (truncation < 0.0) throw std::invalid_argument("stieltjes pairing: negative truncation");
    const auto K = static_cast<std::int64_t>(std::floor(truncation / grid.h + 1e-9));
    const std::int64_t jlo = std::max<std::int64_t>(-K, grid.first_bin());
    const std::int64_t jhi = std::min<std::int64_t>(K - 1, grid.last_bin());
    double acc = 0.0;
    for (std::int64_t j = jlo; j <= jhi; ++j) {
        const double m = grid.mass_at_bin(j);
        if (m != 0.0) acc += m * (g_at(j + 1) - g_at(j));
    }
    // Boundary terms of the summation by parts; zero whenever the path never
    // leaves (-n, n), which makes truncated and full values bit-identical.
    const double upper = g_at(K) * grid.mass_at_bin(K);
    const double lower = g_at(-K) * grid.mass_at_bin(-K - 1);
    return upper - lower - acc;
}

}  // namespace

double stieltjes_pairing(const std::function<double(double)>& g, const LocalTimeGrid& grid,
                         double truncation) {
    const double h = grid.h;
    return pairing_impl([&](std::int64_t j) { return g(static_cast<double>(j) * h); }, grid,
                        truncation);
}

double h_lambda(const RescaledEdges& w, const LocalTimeGrid& grid, double truncation) {
    if (w.h() != grid.h) throw std::invalid_argument("h_lambda: edge cache / grid bin width mismatch");
    return pairing_impl([&](std::int64_t j) { return w.at_edge(j); }, grid, truncation);
}

double h_lambda(const QuenchedField& field, double lambda, const BrownianPath& path,
                double truncation, double h) {
    const auto grid = bm_local_time(path, h);
    const RescaledEdges edges(profile_from_continuum(field, lambda * h), lambda, h);
    return h_lambda(edges, grid, truncation);
}

double l1_distance_on_common_paths(const RescaledEdges& w, const StrassenFunction& f,
                                   int n_paths, std::uint64_t seed, double dt) {
    if (n_paths < 1) throw std::invalid_argument("l1_distance_on_common_paths: need >= 1 path");
    std::vector<double> diffs(static_cast<std::size_t>(n_paths));
    parallel_for(diffs.size(), [&](std::size_t i) {
        const auto path = simulate_bm(1.0, dt, rng::derive(seed, i));
        const auto grid = bm_local_time(path, w.h());
        diffs[i] = std::abs(h_lambda(w, grid) - sample_occupation(f, path));
    });
    double acc = 0.0;
    for (double d : diffs) acc += d;
    return acc / static_cast<double>(n_paths);
}

}  // namespace rwrs
