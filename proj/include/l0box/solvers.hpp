// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"
#include "l0box/diagnostics.hpp"
#include "l0box/problem.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace l0box {

/// How the first-choice extrapolation weight is picked each iteration.
enum class BetaStrategy {
    GenericCap,         ///< 0.99 * sqrt(mu_k / mu_{k-1})
    SequenceConvergent, ///< ((k-1)/(k+alpha-1)) * sqrt((1 - 1/(2k^{1-sigma})) mu_k / mu_{k-1})
    FistaLike,          ///< t-recurrence scaled by mu_{k-1}/mu_k
    Zero,               ///< no extrapolation in any regime (SIHT baseline)
};

/// Which rule produced the accepted beta of an iteration.
enum class Regime { Step1, Step3b, Step3b2, Final };

const char *to_string(BetaStrategy s);
const char *to_string(Regime r);

struct SfihtConfig {
    std::optional<double> L; ///< default 2 * L_f~
    double mu0 = kDefaultMuBar;
    double sigma = 0.95;
    double alpha = 4.0;
    BetaStrategy beta_strategy = BetaStrategy::SequenceConvergent;
    double epsilon = 1e-3;
    Index max_iter = 15000;
    std::optional<Vector> x0; ///< default 0
    /// Check every accepted thresholding step against the per-coordinate
    /// two-candidate comparison (costs one extra pass per iteration).
    bool audit_subproblem = false;
};

/// Fallback weights in the two downgrade branches of the smooth algorithm.
enum class FihtFallback {
    PaperScaled, ///< sqrt(k/(k+1) * cap^2)
    CapEndpoint, ///< the cap itself
};

struct FihtConfig {
    std::optional<double> L; ///< default 2 * L_f
    double alpha = 4.0;
    /// false gives the IHT baseline (beta = 0 in every regime).
    bool extrapolate = true;
    FihtFallback fallback = FihtFallback::PaperScaled;
    double epsilon = 1e-4;
    Index max_iter = 15000;
    std::optional<Vector> x0;
    bool audit_subproblem = false;
};

/// mu_1 = mu_0 and mu_{k+1} = mu_0 / (k+2)^sigma.
class SmoothingSchedule {
  public:
    SmoothingSchedule(double mu0, double sigma);

    /// mu_k for k >= 0, with mu_0 = mu_1 = mu0.
    double mu(Index k) const;
    double mu0() const { return mu0_; }
    double sigma() const { return sigma_; }

  private:
    double mu0_;
    double sigma_;
};

struct ExtrapolationState {
    double t_prev = 1.0; ///< t_{k-1} of the FISTA-like recurrence
    double beta = 0.0;
    Regime regime = Regime::Step1;
};

struct BetaChoice {
    double beta;
    /// t_k to commit once the iterate is accepted (FistaLike only; otherwise t_prev).
    double t_next;
};

/// First-choice beta_k. Pure: the caller commits `t_next` after acceptance.
BetaChoice choose_beta_step1(Index k, const SmoothingSchedule &schedule, BetaStrategy strategy,
                             const ExtrapolationState &state, double alpha = 4.0);

/// Upper limits of the three beta regimes at iteration k. For the smooth
/// algorithm pass mu_prev = mu_cur = 1.
struct BetaCaps {
    double step1;  ///< exclusive
    double step3b; ///< inclusive
    double step3b2;
};
BetaCaps beta_caps(double L, double L_smooth, double mu_prev, double mu_cur);

/// Gradient restricted to the nonzeros of x has sup-norm <= epsilon, and
/// mu <= epsilon when mu is given. Empty support satisfies the gradient clause.
bool stopping_check(const Vector &grad_at_x, const Vector &x, std::optional<double> mu, double epsilon);

enum class SolveStatus { Converged, IterationCap };
const char *to_string(SolveStatus s);

struct IterationRecord {
    Index k = 0;
    double beta = 0.0;
    Regime regime = Regime::Step1;
    std::optional<double> mu;
    Index card = 0;
    double f_exact = 0.0;
    double f_smooth = 0.0;
    double F = 0.0;
    double energy = 0.0;
    double step_norm = 0.0;
    /// Not serialized: I(x^k) != I(x^{k+1}).
    bool support_changes_next = false;
    /// Not serialized: gradient evaluations spent producing x^{k+1}.
    int gradient_evaluations = 0;
};

struct SolveResult {
    Vector x_final;
    /// Index k of the returned iterate x^k; the start point is x^1.
    Index iterations = 0;
    SolveStatus status = SolveStatus::IterationCap;
    std::vector<IterationRecord> trace;
    Index support_change_count = 0;
    SupportSet final_support;
    AuditSummary audit;
    TheoryConstants constants;
    double max_beta = 0.0;
    Index gradient_evaluations = 0;
    /// Coordinates where the thresholding choice lost to the other candidate
    /// (only counted with audit_subproblem).
    Index separability_failures = 0;
    Index threshold_ties = 0;
};

/// A run stopped because of a non-finite value. Keeps the trace so far.
class SolverAborted : public std::runtime_error {
  public:
    SolverAborted(const std::string &msg, std::vector<IterationRecord> partial)
        : std::runtime_error(msg), partial_(std::move(partial)) {}
    const std::vector<IterationRecord> &partial_trace() const { return partial_; }

  private:
    std::vector<IterationRecord> partial_;
};

/// Smoothing fast iterative hard thresholding for nonsmooth losses.
SolveResult sfiht_solve(const Problem &problem, const SfihtConfig &config);
/// SFIHT with beta = 0 throughout.
SolveResult siht_solve(const Problem &problem, SfihtConfig config);

/// Fast iterative hard thresholding for smooth losses.
SolveResult fiht_solve(const Problem &problem, const FihtConfig &config);
/// FIHT with beta = 0 throughout.
SolveResult iht_solve(const Problem &problem, FihtConfig config);

} // namespace l0box
