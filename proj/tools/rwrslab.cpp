// Command-line laboratory for scenery-driven walk and pairing experiments:
// identity cross-checks, moment/truncation bound verification, annealed limit
// comparison, quenched matching scans, and the non-convergence demonstration.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rwrs/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"scenery-walk simulation laboratory"};
    app.require_subcommand(1);

    rwrs::ExperimentConfig cfg;
    app.set_config("--config", "", "TOML config file with any of the option keys below");
    app.add_option("--seed,--scenery-seed", cfg.scenery_seed, "scenery (environment) seed")
        ->capture_default_str();
    app.add_option("--path-seed", cfg.path_seed, "base seed for walk/path replicas")
        ->capture_default_str();
    app.add_option("--scenery-law", cfg.scenery_law,
                   "site law: gaussian | rademacher | centered_exponentialized")
        ->capture_default_str();
    app.add_option("--lambda0", cfg.lambda0, "first scale of the geometric grid")
        ->capture_default_str();
    app.add_option("--lambda-ratio", cfg.lambda_ratio, "geometric grid ratio")
        ->capture_default_str();
    app.add_option("--lambda-count", cfg.lambda_count, "number of grid scales")
        ->capture_default_str();
    app.add_option("--window-lo", cfg.window_lo, "matching window lower edge")
        ->capture_default_str();
    app.add_option("--window-hi", cfg.window_hi, "matching window upper edge")
        ->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "sup-distance tolerance for a match")
        ->capture_default_str();
    app.add_option("--profile-step", cfg.profile_step, "t-grid step for matching scans")
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "path time step")->capture_default_str();
    app.add_option("--bin-width", cfg.h, "local-time bin width")->capture_default_str();
    app.add_option("--replicas", cfg.replicas, "replicas per empirical law")
        ->capture_default_str();
    app.add_option("--theta-paths", cfg.theta_paths, "paths per functional law / bound check")
        ->capture_default_str();
    app.add_option("--targets", cfg.targets, "target dictionary names")
        ->capture_default_str();
    app.add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--separation-threshold", cfg.separation_threshold,
                   "calibrated KS threshold for the non-convergence verdict")
        ->capture_default_str();
    app.add_option("--truncation-slack", cfg.truncation_slack,
                   "calibrated additive slack in the matched-time L1 budget")
        ->capture_default_str();
    app.add_option("--c-hat", cfg.c_hat, "calibrated constant of the pairing tail bound")
        ->capture_default_str();
    app.add_option("--sweep-seeds", cfg.sweep_seeds, "scenery seeds in the fallback sweep")
        ->capture_default_str();

    auto* verify = app.add_subcommand(
        "verify-identities", "cross-check the three functional estimators and the scaling identity")->fallthrough();
    auto* bounds = app.add_subcommand(
        "lemma-bounds", "verify second-moment and truncation bounds")->fallthrough();
    auto* annealed = app.add_subcommand(
        "annealed-limit", "compare the annealed walk law against the continuum limit law")->fallthrough();
    auto* scan = app.add_subcommand(
        "quenched-scan", "scan the scale grid for profile matches and emit quenched laws")->fallthrough();
    auto* nonconv = app.add_subcommand(
        "nonconvergence-report", "quenched non-convergence verdict for a fixed scenery")->fallthrough();
    auto* theta = app.add_subcommand(
        "theta-sample", "sample the limit functional for one target")->fallthrough();
    auto* calibrate = app.add_subcommand(
        "calibrate", "measure the oracle constants (separation, slack, hit rates)")->fallthrough();
    auto* replay = app.add_subcommand(
        "replay", "re-run an experiment from its JSON summary and compare outputs")->fallthrough();

    std::string theta_target = "tent_ramp";
    int theta_paths = 1000;
    theta->add_option("--target", theta_target, "dictionary target name")
        ->capture_default_str();
    theta->add_option("--paths", theta_paths, "number of sampled paths")->capture_default_str();

    std::string summary_path;
    std::string scratch_dir = "replay_out";
    replay->add_option("--summary", summary_path, "summary.json of the run to reproduce")
        ->required();
    replay->add_option("--scratch", scratch_dir, "directory for the reproduction run")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return rwrs::run_verify_identities(cfg);
        if (bounds->parsed()) return rwrs::run_lemma_bounds(cfg);
        if (annealed->parsed()) return rwrs::run_annealed_limit(cfg);
        if (scan->parsed()) return rwrs::run_quenched_scan(cfg);
        if (nonconv->parsed()) return rwrs::run_nonconvergence(cfg);
        if (theta->parsed()) return rwrs::run_theta_sample(cfg, theta_target, theta_paths);
        if (calibrate->parsed()) return rwrs::run_calibrate(cfg);
        if (replay->parsed()) return rwrs::run_replay(summary_path, scratch_dir);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
