// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"

#include <array>
#include <string>
#include <vector>

namespace l0box {

/// Relation between the zero sets of three consecutive accepted iterates.
enum class SupportBranch {
    ThreeEqual, ///< I(x^{k-1}) = I(x^k) = I(x^{k+1})
    Otherwise,
};

/// Weight tau_k of the squared step in the smoothed energy H.
double compute_tau(SupportBranch branch, double L, double L_smooth, double mu_prev, double mu_cur,
                   double beta);

/// Weight zeta_k of the squared step in the smooth-case energy W.
double compute_zeta(SupportBranch branch, double L, double L_smooth, double beta);

struct DeltaBound {
    double delta;
    Vector per_coordinate;
};

/// Lower bound on nonzero magnitudes of thresholded iterates with mu = 1:
/// delta_i = min of the finite nonzero bounds |l_i|, u_i and sqrt(2 lambda / L).
DeltaBound compute_delta(const BoxSet &box, double lambda, double L);

/// nu = min{ l_i^2 / mu0, u_j^2 / mu0, 2 lambda / L } over finite nonzero bounds.
double compute_nu(const BoxSet &box, double lambda, double L, double mu0);

struct TheoryConstants {
    double nu = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    double L = 0.0;
    double L_smooth = 0.0;
    double mu0 = 1.0;
};

/// Constants for the smoothed algorithm (energy H).
TheoryConstants smoothed_constants(const BoxSet &box, double lambda, double L, double L_smooth,
                                   double kappa, double mu0);
/// Constants for the smooth algorithm (energy W); nu equals delta^2 there.
TheoryConstants smooth_constants(const BoxSet &box, double lambda, double L, double L_smooth);

enum class EnergyKind { H, W };

enum class ViolationKind : int {
    EnergyIncrease = 0,       ///< energy went up beyond slack
    BetaWeight,               ///< beta^2 coefficient exceeds tau_k / zeta_k
    SupportChangeDecrement,   ///< decrement too small on a support-change step
    SupportChangeStep,        ///< squared step below nu*mu (or step below delta)
    Summability,              ///< gamma * partial sum exceeds E_1 - E_k
    SequenceSummability,      ///< weighted partial sum exceeds its energy bound
    BetaCap,                  ///< accepted beta outside its regime's interval
    Infeasible,               ///< iterate left the box
    Count
};

const char *to_string(ViolationKind kind);

struct Violation {
    Index k;
    ViolationKind kind;
    double lhs;
    double rhs;
};

/// One accepted step x^k -> x^{k+1} as seen by the energy monitor.
struct IterateBundle {
    Index k = 1;
    double beta = 0.0;    ///< beta_k used to form y^k
    double mu_prev = 1.0; ///< mu_{k-1}
    double mu_cur = 1.0;  ///< mu_k
    /// F~(x^k, mu_k) for H, F(x^k) for W.
    double objective_value = 0.0;
    double step_sq = 0.0; ///< ||x^k - x^{k-1}||^2
    bool prev_support_equal = true; ///< I(x^{k-1}) == I(x^k)
    bool next_support_equal = true; ///< I(x^k) == I(x^{k+1})
};

struct AuditReport {
    Index k = 0;
    double energy = 0.0;
    double weight = 0.0;      ///< tau_k or zeta_k
    double decrement = 0.0;   ///< E_k - E_{k-1}; 0 on the first report
    SupportBranch branch = SupportBranch::Otherwise;
    std::vector<Violation> violations;
};

struct AuditSummary {
    std::array<Index, static_cast<std::size_t>(ViolationKind::Count)> counts{};
    std::vector<Violation> first; ///< up to 32 recorded violations

    Index total() const;
    Index count(ViolationKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
    void add(const Violation &v);
    std::string describe() const;
};

/// Tracks the energy sequence H (smoothed) or W (smooth) over accepted
/// iterates and checks the descent inequalities each step. Reports, never
/// throws.
class EnergyMonitor {
  public:
    /// `sequence_proxy` enables the weighted summability check that holds for
    /// the sequence-convergent extrapolation rule with sigma in [1/2, 1].
    EnergyMonitor(EnergyKind kind, TheoryConstants constants, bool sequence_proxy = false,
                  double rel_slack = 1e-10);

    AuditReport audit_descent(const IterateBundle &bundle);

    /// Report for the terminal iterate, where I(x^{k+1}) does not exist. The
    /// smallest admissible weight is used, so the value is a lower bound on
    /// any admissible energy at x^k and monotonicity remains checkable.
    AuditReport audit_final(Index k, double mu_prev, double mu_cur, double objective_value,
                            double step_sq, bool prev_support_equal);

    const AuditSummary &summary() const { return summary_; }
    void record(const Violation &v) { summary_.add(v); }
    double first_energy() const { return first_energy_; }
    double summability_sum() const { return summability_; }
    double sequence_sum() const { return sequence_sum_; }

  private:
    AuditReport finish(Index k, double energy, double weight, SupportBranch branch, double beta,
                       double mu_prev, double mu_cur, double step_sq, bool prev_support_equal,
                       bool has_next, bool next_support_equal);

    EnergyKind kind_;
    TheoryConstants c_;
    bool sequence_proxy_;
    double slack_;
    AuditSummary summary_;

    bool has_prev_ = false;
    double prev_energy_ = 0.0;
    double first_energy_ = 0.0;
    double summability_ = 0.0;
    double sequence_sum_ = 0.0;
};

/// |E_k - E_{k-window}| <= tol * (1 + |E_k|) at the end of the sequence.
bool energy_settled(const std::vector<double> &energies, std::size_t window = 100, double tol = 1e-6);

} // namespace l0box
