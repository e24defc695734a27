#include "rwrs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "rwrs/rng.hpp"

namespace rwrs::stats {

double EmpiricalDistribution::cdf(double x) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

double EmpiricalDistribution::quantile(double q) const {
    if (samples.empty()) throw std::invalid_argument("quantile of empty distribution");
    if (q <= 0.0) return samples.front();
    if (q >= 1.0) return samples.back();
    const double pos = q * static_cast<double>(samples.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    if (i + 1 >= samples.size()) return samples.back();
    return samples[i] + w * (samples[i + 1] - samples[i]);
}

EmpiricalDistribution make_empirical(std::vector<double> samples, std::string experiment_id,
                                     std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("empirical distribution needs >= 1 sample");
    std::sort(samples.begin(), samples.end());
    EmpiricalDistribution d;
    d.samples = std::move(samples);
    d.experiment_id = std::move(experiment_id);
    d.seed = seed;
    return d;
}

double ks_distance(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
    if (p.samples.empty() || q.samples.empty())
        throw std::invalid_argument("ks_distance: empty distribution");
    const auto& a = p.samples;
    const auto& b = q.samples;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double wasserstein1(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
    if (p.samples.empty() || q.samples.empty())
        throw std::invalid_argument("wasserstein1: empty distribution");
    const auto& a = p.samples;
    const auto& b = q.samples;
    if (a.size() == b.size()) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
        return s / static_cast<double>(a.size());
    }
    // General case: integrate |F_P - F_Q| between consecutive pooled points.
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double w = 0.0, prev = 0.0;
    bool have_prev = false;
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) x = a[i];
        else x = b[j];
        if (have_prev && x > prev)
            w += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) * (x - prev);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        prev = x;
        have_prev = true;
    }
    return w;
}

std::pair<double, double> bootstrap_ci(std::span<const double> samples,
                                       const std::function<double(std::span<const double>)>& statistic,
                                       double level, int resamples, std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("bootstrap_ci: empty samples");
    if (resamples < 100) throw std::invalid_argument("bootstrap_ci: need >= 100 resamples");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap_ci: level in (0,1)");
    const std::size_t n = samples.size();
    std::vector<double> draw(n), stats_out(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        const std::uint64_t key = rng::derive(seed, static_cast<std::uint64_t>(r));
        for (std::size_t k = 0; k < n; ++k)
            draw[k] = samples[rng::at(key, k) % n];
        stats_out[static_cast<std::size_t>(r)] = statistic(draw);
    }
    auto boot = make_empirical(std::move(stats_out));
    const double alpha = (1.0 - level) / 2.0;
    return {boot.quantile(alpha), boot.quantile(1.0 - alpha)};
}

void write_ecdf_csv(const EmpiricalDistribution& d, std::ostream& out) {
    out << std::setprecision(17) << "value,cdf\n";
    const double n = static_cast<double>(d.samples.size());
    for (std::size_t i = 0; i < d.samples.size(); ++i)
        out << d.samples[i] << ',' << (static_cast<double>(i + 1) / n) << '\n';
}

}  // namespace rwrs::stats
