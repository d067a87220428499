// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"
#include "l0box/oracle.hpp"
#include "l0box/problem.hpp"
#include "l0box/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace l0box {

enum class ExampleId {
    LinReg41,   ///< l1 regression, orthonormal-row design, box [-1, 1]
    Censored42, ///< censored l1 regression, Gaussian design, box [0, 1]
    LeastSq43,  ///< least squares, orthonormal-row design, box [0, 5]
};

enum class SolverKind { Sfiht, Siht, Fiht, Iht };

enum class BetaPreset {
    Generic,
    SeqConv,
    Fista,
    /// Sequence-convergent rule for 41, FISTA-like for 42, scaled fallbacks for 43.
    PaperDefault,
};

const char *to_string(ExampleId e);
const char *to_string(SolverKind s);
const char *to_string(BetaPreset p);
ExampleId parse_example(const std::string &s);   ///< "41", "42", "43"
SolverKind parse_solver(const std::string &s);   ///< "sfiht", "siht", "fiht", "iht"
BetaPreset parse_beta_preset(const std::string &s);

struct ExperimentSpec {
    ExampleId example = ExampleId::LinReg41;
    Index m = 60;
    Index n = 200;
    Index s = 80;
    double noise_scale = 0.005;
    std::uint64_t seed = 1;
    double lambda = 0.1;
    double epsilon = 1e-3;
    double sigma = 0.95;
    double mu0 = 0.7;
    double alpha = 4.0;
    Index max_iter = 15000;
    std::optional<double> L; ///< default 2 L_f~ (or 2 L_f)
    SolverKind solver = SolverKind::Sfiht;
    BetaPreset beta_preset = BetaPreset::PaperDefault;
    /// Also run the zero-extrapolation counterpart on the same data.
    bool run_baseline = true;
};

/// Desk-scale defaults per example, or the larger published sizes with
/// `full_scale`. Lambda defaults are calibrated so the recovered supports are
/// neither empty nor full at those sizes.
ExperimentSpec default_spec(ExampleId example, bool full_scale = false);

/// Throws ContractViolation on an inconsistent spec.
void validate(const ExperimentSpec &spec);

struct GeneratedInstance {
    Matrix A;
    Vector b;
    Vector x_star;
    BoxSet box;
    std::uint64_t seed_used = 0; ///< differs from the spec seed after a bump
    int seed_bumps = 0;
};

/// Seeded data for one example. Draw order for 41/43: permutation, s normals
/// for the planted entries, m*n normals (row-major) for the design, m noise
/// normals. For 42: m*n design normals, permutation, s uniforms, m noise
/// normals. A degenerate QR (never seen in practice) regenerates with seed + 1.
GeneratedInstance generate_instance(const ExperimentSpec &spec);

/// Problem for the example's loss on the instance data.
Problem make_problem(const GeneratedInstance &instance, ExampleId example, double lambda);

SfihtConfig sfiht_config(const ExperimentSpec &spec);
FihtConfig fiht_config(const ExperimentSpec &spec);
SolveResult run_solver(const Problem &problem, const ExperimentSpec &spec, SolverKind kind);

enum class RateMode { SfihtRate, FihtRate };

struct RateReport {
    RateMode mode = RateMode::SfihtRate;
    bool applicable = false; ///< false when the trace is too short
    bool pass = false;
    bool beyond_measurement = false;
    double F_inf = 0.0;
    double slope = 0.0;
    double slope_lo = 0.0; ///< 95% band
    double slope_hi = 0.0;
    double threshold = 0.0;
    double q3_max = 0.0;
    double q4_max = 0.0;
    double quarter_ratio = 0.0;
    Index points = 0;
    std::string note;
};

/// Rate check on the F column of a trace.
/// SfihtRate: least-squares slope of log(max(F_k - F_inf, 0) + floor) against
/// log k over the trailing half; pass iff slope <= -0.8 sigma.
/// FihtRate: ratio of max k^2 (F_k - F_inf) over the last quarter to the same
/// over the third quarter; pass iff < 1.
/// F_inf defaults to the final F. Traces shorter than `min_length` are not
/// applicable.
RateReport rate_probe(const std::vector<IterationRecord> &trace, RateMode mode, double sigma = 1.0,
                      std::optional<double> F_inf = std::nullopt, std::size_t min_length = 200);

struct SolverRun {
    SolverKind kind = SolverKind::Sfiht;
    SolveResult result;
    double seconds = 0.0;
    std::string error; ///< nonempty when the solver aborted
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::uint64_t seed_used = 0;
    int seed_bumps = 0;
    Index planted_card = 0;
    std::vector<SolverRun> runs;
    std::optional<RateReport> rate;
};

/// Generates the instance, runs the configured solver and its baseline on
/// the same data, times each run (generation excluded) and probes the rate of
/// the primary run. With `out_dir` the artifacts are written there as well.
ExperimentReport run_experiment(const ExperimentSpec &spec,
                                const std::optional<std::filesystem::path> &out_dir = std::nullopt);

/// summary.json content.
std::string summary_json(const ExperimentReport &report);

/// One column per epsilon, one row pair (time, iterations) per solver.
struct TableColumn {
    double epsilon;
    std::vector<SolverRun> runs;
};
std::string markdown_table(const std::string &caption, const std::vector<TableColumn> &columns);

/// Tiny instance for oracle comparisons: m = n/2 (41, 43) or 3n (42), s = n/2,
/// solved with the sequence-convergent rule at sigma = 0.7, eps = 1e-4 (41, 42)
/// or FIHT with alpha = 4, eps = 1e-9 (43).
ExperimentSpec tiny_spec(ExampleId example, Index n, std::uint64_t seed, double lambda);

/// Certificates for every zero set of a tiny instance plus the solver's
/// output and the certificate it lands on, as JSON.
std::string oracle_report_json(const ExperimentSpec &tiny, const RestrictedOptions &options = {});

/// trace_<solver>.csv, trace_<solver>.meta.json, summary.json, table.md.
void write_artifacts(const ExperimentReport &report, const std::filesystem::path &dir);

} // namespace l0box
