#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwrs/bounds.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/strassen.hpp"
#include "rwrs/theta.hpp"

namespace rwrs {

// Everything a run needs; serialized whole into each JSON summary so any
// output can be regenerated bit-identically from the summary alone.
struct ExperimentConfig {
    std::uint64_t scenery_seed = 388;  // calibrated: matches both default targets
    std::uint64_t path_seed = 1;
    std::string scenery_law = "rademacher";  // discrete experiments

    // geometric lambda grid: lambda0 * ratio^k, k = 0..count-1
    double lambda0 = 20.085536923187668;  // e^3
    double lambda_ratio = 1.2840254166877414;  // e^0.25
    int lambda_count = 37;  // reaches e^12

    double window_lo = -1.0, window_hi = 1.0;
    double epsilon = 0.4;
    double profile_step = 0.01;  // t-grid for matching scans

    double dt = 1e-4;
    double h = 0.02;
    int replicas = 5000;
    int theta_paths = 10000;

    std::vector<std::string> targets = {"zero", "tent_ramp"};
    std::string out_dir = "out";

    // calibrated constants (see the calibrate subcommand)
    double separation_threshold = 0.21;
    double truncation_slack = 0.82;
    double c_hat = 0.67;

    int sweep_seeds = 20;
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& json_text);

// Quenched law at one scale: the empirical law of the rescaled value with the
// scenery frozen and only walk/path randomness varying.
struct QuenchedLawPoint {
    double scale = 0.0;  // lambda (continuum) or n (walk)
    stats::EmpiricalDistribution law;
    std::string matched_target;  // empty if unmatched
    double match_sup_distance = NAN;
};

// Two-sided cumulative profile of a discrete scenery, Xi(x), interpolated
// linearly between integers; plays the role of W for the walk pipeline.
SceneryProfile scenery_profile(const QuenchedField& discrete_field);

QuenchedLawPoint quenched_law_discrete(const QuenchedField& field, long n, int replicas,
                                       std::uint64_t seed);
QuenchedLawPoint quenched_law_bmbs(const SceneryProfile& w, double t, int replicas,
                                   std::uint64_t seed, double dt, double h);
QuenchedLawPoint quenched_law_bmbs(const QuenchedField& field, double t, int replicas,
                                   std::uint64_t seed, double dt, double h);

double kappa_correction(double t);  // sqrt(lnln sqrt(t) / lnln t)

struct MatchPoint {
    double lambda = 0.0;
    double sup_dist = 0.0;
};

std::vector<double> lambda_grid(const ExperimentConfig& config);
std::vector<MatchPoint> find_matching_times(const SceneryProfile& w, const StrassenFunction& f,
                                            double window_lo, double window_hi, double epsilon,
                                            const std::vector<double>& lambdas, double step);

struct MatchedLaw {
    std::string target;
    MatchPoint match;                     // best (smallest sup distance) match
    std::vector<MatchPoint> all_matches;  // every grid point within epsilon
    double ks_to_target_theta = NAN;
    double w1_to_target_theta = NAN;
    double l1_to_target = NAN;  // E|H_lambda - int f dL_1| on shared paths
    double l1_budget = NAN;     // (5 + a_hat) * epsilon + truncation slack
    stats::EmpiricalDistribution law;
};

struct NonconvergenceReport {
    std::uint64_t scenery_seed = 0;
    double a_hat = NAN;
    std::vector<MatchedLaw> matched;          // one per target with >= 1 match
    std::vector<std::string> unmatched;       // targets with no match in budget
    double max_cross_target_ks = NAN;         // across distinct targets
    double separation_threshold = NAN;
    bool all_within_budget = false;
    // verdict: "nonconvergence" | "no_separation" | "inconclusive"
    std::string verdict = "inconclusive";
};

NonconvergenceReport nonconvergence_report(const QuenchedField& field,
                                           const std::vector<std::string>& targets,
                                           const ExperimentConfig& config);

struct AnnealedPoint {
    long n = 0;
    double ks = NAN;
    double w1 = NAN;
};

struct AnnealedReport {
    std::vector<AnnealedPoint> points;
    double final_ks = NAN;
    bool nonincreasing_within_noise = false;
    bool passed = false;
};

AnnealedReport annealed_limit_check(const ExperimentConfig& config);

// Both constructions of Z_t / t^{3/4} at one t, annealed (fresh W and B per
// replica): direct grid evaluation of int L_t dW versus the spatially
// rescaled pairing -int t^{-1/4} W(sqrt(t) y) dL_1(y).
struct ScalingCheck {
    stats::EmpiricalDistribution direct;
    stats::EmpiricalDistribution rescaled;
    double ks = 0.0;
};

ScalingCheck scaling_identity_check(double t, int replicas, std::uint64_t seed, double dt,
                                    double h);

// CLI-facing runners; each writes CSV/JSON outputs under config.out_dir and
// returns the process exit code (0 pass, 1 assertion failure, 2 inconclusive).
int run_theta_sample(const ExperimentConfig& config, const std::string& target_name, int n_paths);
int run_verify_identities(const ExperimentConfig& config);
int run_lemma_bounds(const ExperimentConfig& config);
int run_annealed_limit(const ExperimentConfig& config);
int run_quenched_scan(const ExperimentConfig& config);
int run_nonconvergence(const ExperimentConfig& config);
int run_replay(const std::string& summary_path, const std::string& scratch_dir);
int run_calibrate(const ExperimentConfig& config);

}  // namespace rwrs
