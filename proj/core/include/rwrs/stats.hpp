#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rwrs::stats {

// Sorted sample vector with its provenance; the unit of every law comparison.
struct EmpiricalDistribution {
    std::vector<double> samples;  // ascending
    std::string experiment_id;
    std::uint64_t seed = 0;

    std::size_t n() const { return samples.size(); }
    double cdf(double x) const;
    double quantile(double q) const;
};

EmpiricalDistribution make_empirical(std::vector<double> samples,
                                     std::string experiment_id = {},
                                     std::uint64_t seed = 0);

// sup over pooled points of |F_P - F_Q|, in [0, 1].
double ks_distance(const EmpiricalDistribution& p, const EmpiricalDistribution& q);

// int |F_P - F_Q| dx; for equal sizes this is the mean absolute difference of
// the order statistics (quantile coupling).
double wasserstein1(const EmpiricalDistribution& p, const EmpiricalDistribution& q);

// Two-sample Kolmogorov-Smirnov acceptance radius at roughly the 99% level.
inline double ks_two_sample_critical(std::size_t n, std::size_t m) {
    const double inv = 1.0 / static_cast<double>(n) + 1.0 / static_cast<double>(m);
    return 1.63 * std::sqrt(inv);
}

// Percentile bootstrap of an arbitrary statistic; deterministic in seed.
std::pair<double, double> bootstrap_ci(std::span<const double> samples,
                                       const std::function<double(std::span<const double>)>& statistic,
                                       double level, int resamples, std::uint64_t seed);

void write_ecdf_csv(const EmpiricalDistribution& d, std::ostream& out);

}  // namespace rwrs::stats
