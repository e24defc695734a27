#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "rwrs/local_time.hpp"
#include "rwrs/sampler.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/strassen.hpp"

namespace rwrs {

inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();

// Three estimators of int f dL_1 over one path.  occupation is the canonical
// one (exact identity, no binning); the other two are verification channels.

// -sum_k f'(B_{t_k}) dt
double sample_occupation(const StrassenFunction& f, const BrownianPath& path);

// -sum_bins mass * f'(bin center) * h
double sample_stieltjes(const StrassenFunction& f, const LocalTimeGrid& grid);

// 2 * ( -F(B_1) + sum_k f(B_{t_k}) (B_{t_{k+1}} - B_{t_k}) ), F exact
double sample_ito(const StrassenFunction& f, const BrownianPath& path);

struct ThetaSample {
    std::uint64_t path_seed = 0;
    double value_occupation = 0.0;
    double value_stieltjes = 0.0;
    double value_ito = 0.0;
};

ThetaSample theta_sample(const StrassenFunction& f, const BrownianPath& path,
                         const LocalTimeGrid& grid, std::uint64_t path_seed);

void write_theta_samples_csv(const std::vector<ThetaSample>& samples, std::ostream& out);
std::vector<ThetaSample> read_theta_samples_csv(std::istream& in);

// Law of int f dL_1 over n_paths independent paths (occupation estimator).
stats::EmpiricalDistribution theta_law(const StrassenFunction& f, int n_paths,
                                       std::uint64_t seed, double dt);

// W_lambda evaluated on the local-time bin-edge lattice {j*h}.  Values inside
// [-precomputed_range, precomputed_range] are tabulated once so thousands of
// replicas against one scenery share the work; rare excursions beyond fall
// back to direct evaluation.
class RescaledEdges {
public:
    RescaledEdges(SceneryProfile w, double lambda, double h, double precomputed_range = 8.0);

    double lambda() const { return lambda_; }
    double h() const { return h_; }
    double at_edge(std::int64_t j) const;  // W_lambda(j * h)

private:
    SceneryProfile w_;
    double lambda_ = 0.0;
    double h_ = 0.0;
    double denom_ = 1.0;
    std::int64_t lo_ = 0;
    std::vector<double> vals_;
};

// int_{[-n,n]} g dL_1 for an arbitrary g on the bin-edge lattice, by
// summation by parts; n = kNoTruncation integrates over the whole support.
double stieltjes_pairing(const std::function<double(double)>& g, const LocalTimeGrid& grid,
                         double truncation = kNoTruncation);

// H_lambda^{(n)} = int_{-n}^{n} W_lambda dL_1 by summation by parts on the
// grid; n = kNoTruncation gives H_lambda (boundary terms vanish beyond the
// path support, so a confined path makes both versions bit-identical).
double h_lambda(const RescaledEdges& w, const LocalTimeGrid& grid,
                double truncation = kNoTruncation);
double h_lambda(const QuenchedField& field, double lambda, const BrownianPath& path,
                double truncation, double h);

// Mean over shared paths of |H_lambda - int f dL_1|: the L1(B) distance
// estimator between a scenery pairing and a target functional.
double l1_distance_on_common_paths(const RescaledEdges& w, const StrassenFunction& f,
                                   int n_paths, std::uint64_t seed, double dt);

}  // namespace rwrs
