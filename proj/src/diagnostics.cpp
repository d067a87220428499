// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace l0box {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack on comparisons that hold with equality at the cap values,
// where sqrt followed by squaring can round up by an ulp.
constexpr double kEqualitySlack = 1e-12;

void check_positive(double v, const char *what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ContractViolation(std::string(what) + " must be positive and finite");
}

void check_L(double L, double L_smooth) {
    check_positive(L, "L");
    check_positive(L_smooth, "L_smooth");
    if (!(L > L_smooth))
        throw ContractViolation("L must exceed the Lipschitz constant of the smooth part");
}

} // namespace

double compute_tau(SupportBranch branch, double L, double L_smooth, double mu_prev, double mu_cur,
                   double beta) {
    check_L(L, L_smooth);
    check_positive(mu_prev, "mu_prev");
    check_positive(mu_cur, "mu_cur");
    if (branch == SupportBranch::ThreeEqual)
        return (L / 4.0) / mu_prev + (L / 4.0) * beta * beta / mu_cur;
    return ((L - L_smooth) / 8.0) / mu_prev;
}

double compute_zeta(SupportBranch branch, double L, double L_smooth, double beta) {
    check_L(L, L_smooth);
    if (branch == SupportBranch::ThreeEqual)
        return (L / 4.0) * (1.0 + beta * beta);
    return (L - L_smooth) / 8.0;
}

DeltaBound compute_delta(const BoxSet &box, double lambda, double L) {
    check_positive(L, "L");
    const double root = std::sqrt(2.0 * lambda / L);
    DeltaBound out{kInf, Vector(box.dim())};
    for (Index i = 0; i < box.dim(); ++i) {
        double d = root;
        const double lo = box.lower()[i];
        const double hi = box.upper()[i];
        if (lo != 0.0)
            d = std::min(d, -lo);
        if (hi != 0.0)
            d = std::min(d, hi);
        out.per_coordinate[i] = d;
        out.delta = std::min(out.delta, d);
    }
    return out;
}

double compute_nu(const BoxSet &box, double lambda, double L, double mu0) {
    check_positive(L, "L");
    check_positive(mu0, "mu0");
    double nu = 2.0 * lambda / L;
    for (Index i = 0; i < box.dim(); ++i) {
        const double lo = box.lower()[i];
        const double hi = box.upper()[i];
        if (lo != 0.0 && std::isfinite(lo))
            nu = std::min(nu, lo * lo / mu0);
        if (hi != 0.0 && std::isfinite(hi))
            nu = std::min(nu, hi * hi / mu0);
    }
    return nu;
}

TheoryConstants smoothed_constants(const BoxSet &box, double lambda, double L, double L_smooth,
                                   double kappa, double mu0) {
    check_L(L, L_smooth);
    TheoryConstants c;
    c.nu = compute_nu(box, lambda, L, mu0);
    c.gamma = std::min(L / 4.0, (L - L_smooth) / 8.0);
    c.delta = compute_delta(box, lambda, L).delta;
    c.kappa = kappa;
    c.L = L;
    c.L_smooth = L_smooth;
    c.mu0 = mu0;
    return c;
}

TheoryConstants smooth_constants(const BoxSet &box, double lambda, double L, double L_smooth) {
    check_L(L, L_smooth);
    TheoryConstants c;
    c.delta = compute_delta(box, lambda, L).delta;
    c.nu = c.delta * c.delta;
    c.gamma = std::min(L / 4.0, (L - L_smooth) / 8.0);
    c.kappa = 0.0;
    c.L = L;
    c.L_smooth = L_smooth;
    c.mu0 = 1.0;
    return c;
}

const char *to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::EnergyIncrease: return "energy_increase";
    case ViolationKind::BetaWeight: return "beta_weight";
    case ViolationKind::SupportChangeDecrement: return "support_change_decrement";
    case ViolationKind::SupportChangeStep: return "support_change_step";
    case ViolationKind::Summability: return "summability";
    case ViolationKind::SequenceSummability: return "sequence_summability";
    case ViolationKind::BetaCap: return "beta_cap";
    case ViolationKind::Infeasible: return "infeasible";
    case ViolationKind::Count: break;
    }
    return "unknown";
}

Index AuditSummary::total() const {
    Index t = 0;
    for (Index c : counts)
        t += c;
    return t;
}

void AuditSummary::add(const Violation &v) {
    ++counts[static_cast<std::size_t>(v.kind)];
    if (first.size() < 32)
        first.push_back(v);
}

std::string AuditSummary::describe() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto &v : first)
        os << "k=" << v.k << " " << to_string(v.kind) << ": " << v.lhs << " > " << v.rhs << "\n";
    if (total() > static_cast<Index>(first.size()))
        os << "... " << total() - static_cast<Index>(first.size()) << " more\n";
    return os.str();
}

EnergyMonitor::EnergyMonitor(EnergyKind kind, TheoryConstants constants, bool sequence_proxy,
                             double rel_slack)
    : kind_(kind), c_(constants), sequence_proxy_(sequence_proxy), slack_(rel_slack) {
    check_L(c_.L, c_.L_smooth);
}

AuditReport EnergyMonitor::audit_descent(const IterateBundle &b) {
    const SupportBranch branch = b.prev_support_equal && b.next_support_equal
                                     ? SupportBranch::ThreeEqual
                                     : SupportBranch::Otherwise;
    const bool smoothed = kind_ == EnergyKind::H;
    const double weight = smoothed
                              ? compute_tau(branch, c_.L, c_.L_smooth, b.mu_prev, b.mu_cur, b.beta)
                              : compute_zeta(branch, c_.L, c_.L_smooth, b.beta);
    const double energy = b.objective_value + (smoothed ? c_.kappa * b.mu_cur : 0.0) + weight * b.step_sq;
    return finish(b.k, energy, weight, branch, b.beta, b.mu_prev, b.mu_cur, b.step_sq,
                  b.prev_support_equal, true, b.next_support_equal);
}

AuditReport EnergyMonitor::audit_final(Index k, double mu_prev, double mu_cur, double objective_value,
                                       double step_sq, bool prev_support_equal) {
    const bool smoothed = kind_ == EnergyKind::H;
    const double weight = smoothed ? compute_tau(SupportBranch::Otherwise, c_.L, c_.L_smooth, mu_prev,
                                                 mu_cur, 0.0)
                                   : compute_zeta(SupportBranch::Otherwise, c_.L, c_.L_smooth, 0.0);
    const double energy = objective_value + (smoothed ? c_.kappa * mu_cur : 0.0) + weight * step_sq;
    return finish(k, energy, weight, SupportBranch::Otherwise, 0.0, mu_prev, mu_cur, step_sq,
                  prev_support_equal, false, false);
}

AuditReport EnergyMonitor::finish(Index k, double energy, double weight, SupportBranch branch,
                                  double beta, double mu_prev, double mu_cur, double step_sq,
                                  bool prev_support_equal, bool has_next, bool next_support_equal) {
    AuditReport r;
    r.k = k;
    r.energy = energy;
    r.weight = weight;
    r.branch = branch;
    auto flag = [&](ViolationKind kind, double lhs, double rhs) {
        Violation v{k, kind, lhs, rhs};
        r.violations.push_back(v);
        summary_.add(v);
    };

    const bool smoothed = kind_ == EnergyKind::H;
    // With mu = 1 the smooth-case bounds reduce to the same expressions.
    const double mu_k = smoothed ? mu_cur : 1.0;
    const double mu_km1 = smoothed ? mu_prev : 1.0;

    if (has_next) {
        const double coeff = next_support_equal ? c_.L / (2.0 * mu_k)
                                                : (2.0 * c_.L - c_.L_smooth) / (2.0 * mu_k);
        const double lhs = coeff * beta * beta;
        if (lhs > weight * (1.0 + kEqualitySlack))
            flag(ViolationKind::BetaWeight, lhs, weight);
    }

    if (has_prev_) {
        r.decrement = energy - prev_energy_;
        const double tol = slack_ * (1.0 + std::abs(prev_energy_));
        if (r.decrement > tol)
            flag(ViolationKind::EnergyIncrease, energy, prev_energy_);

        if (!prev_support_equal) {
            // The step x^{k-1} -> x^k changed the support.
            const double bound = -((c_.L - c_.L_smooth) / 8.0) / mu_km1 * step_sq;
            if (r.decrement > bound + tol)
                flag(ViolationKind::SupportChangeDecrement, r.decrement, bound);
            if (smoothed) {
                const double floor = c_.nu * mu_km1;
                if (step_sq < floor * (1.0 - kEqualitySlack))
                    flag(ViolationKind::SupportChangeStep, floor, step_sq);
            } else {
                const double step = std::sqrt(step_sq);
                if (step < c_.delta * (1.0 - kEqualitySlack))
                    flag(ViolationKind::SupportChangeStep, c_.delta, step);
            }
        }

        if (has_next) {
            // Step x^{k-1} -> x^k, weighted with beta_k. The terminal report
            // has no chosen beta and contributes nothing.
            const double ratio = smoothed ? mu_km1 / mu_k : 1.0;
            summability_ += (1.0 - beta * beta * ratio) / mu_km1 * step_sq;
            sequence_sum_ += step_sq / (static_cast<double>(k) * mu_km1 * mu_km1);
        }
        const double gap = first_energy_ - energy;
        const double sum_tol = 1e-9 * (1.0 + std::abs(first_energy_));
        if (c_.gamma * summability_ > gap + sum_tol)
            flag(ViolationKind::Summability, c_.gamma * summability_, gap);
        if (sequence_proxy_) {
            const double bound = 2.0 / (c_.mu0 * c_.gamma) * gap;
            const double lhs = sequence_sum_;
            if (lhs > bound + 2.0 / (c_.mu0 * c_.gamma) * sum_tol)
                flag(ViolationKind::SequenceSummability, lhs, bound);
        }
    } else {
        first_energy_ = energy;
    }

    has_prev_ = true;
    prev_energy_ = energy;
    return r;
}

bool energy_settled(const std::vector<double> &energies, std::size_t window, double tol) {
    if (energies.size() <= window)
        return false;
    const double last = energies.back();
    const double earlier = energies[energies.size() - 1 - window];
    return std::abs(last - earlier) <= tol * (1.0 + std::abs(last));
}

} // namespace l0box
