// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/solvers.hpp"

#include "l0box/subproblem.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace l0box {

const char *to_string(BetaStrategy s) {
    switch (s) {
    case BetaStrategy::GenericCap: return "generic";
    case BetaStrategy::SequenceConvergent: return "seqconv";
    case BetaStrategy::FistaLike: return "fista";
    case BetaStrategy::Zero: return "zero";
    }
    return "unknown";
}

const char *to_string(Regime r) {
    switch (r) {
    case Regime::Step1: return "step1";
    case Regime::Step3b: return "step3b";
    case Regime::Step3b2: return "step3b2";
    case Regime::Final: return "final";
    }
    return "unknown";
}

const char *to_string(SolveStatus s) {
    return s == SolveStatus::Converged ? "converged" : "iteration_cap";
}

SmoothingSchedule::SmoothingSchedule(double mu0, double sigma) : mu0_(mu0), sigma_(sigma) {
    if (!(mu0 > 0.0) || !std::isfinite(mu0))
        throw ContractViolation("SmoothingSchedule: mu0 must be positive");
    if (!(sigma > 0.0 && sigma < 2.0))
        throw ContractViolation("SmoothingSchedule: sigma must lie in (0, 2)");
}

double SmoothingSchedule::mu(Index k) const {
    if (k <= 1)
        return mu0_;
    return mu0_ / std::pow(static_cast<double>(k + 1), sigma_);
}

BetaChoice choose_beta_step1(Index k, const SmoothingSchedule &schedule, BetaStrategy strategy,
                             const ExtrapolationState &state, double alpha) {
    if (k < 1)
        throw ContractViolation("choose_beta_step1: k must be >= 1");
    const double mu_k = schedule.mu(k);
    const double mu_km1 = schedule.mu(k - 1);
    const double ratio = mu_k / mu_km1;
    const double kd = static_cast<double>(k);
    switch (strategy) {
    case BetaStrategy::GenericCap:
        return {0.99 * std::sqrt(ratio), state.t_prev};
    case BetaStrategy::SequenceConvergent: {
        const double shrink = 1.0 - 1.0 / (2.0 * std::pow(kd, 1.0 - schedule.sigma()));
        return {((kd - 1.0) / (kd + alpha - 1.0)) * std::sqrt(shrink * ratio), state.t_prev};
    }
    case BetaStrategy::FistaLike: {
        const double t = (1.0 + std::sqrt(1.0 + 4.0 * (mu_km1 / mu_k) * state.t_prev * state.t_prev)) / 2.0;
        return {(state.t_prev - 1.0) / t, t};
    }
    case BetaStrategy::Zero:
        return {0.0, state.t_prev};
    }
    return {0.0, state.t_prev};
}

BetaCaps beta_caps(double L, double L_smooth, double mu_prev, double mu_cur) {
    const double ratio = mu_cur / mu_prev;
    return {std::sqrt(ratio), std::sqrt((L - L_smooth) / (4.0 * L) * ratio),
            std::sqrt((L - L_smooth) / (8.0 * L - 4.0 * L_smooth) * ratio)};
}

bool stopping_check(const Vector &grad_at_x, const Vector &x, std::optional<double> mu, double epsilon) {
    if (mu && *mu > epsilon)
        return false;
    return restricted_sup_norm(grad_at_x, x) <= epsilon;
}

namespace {

// Everything that differs between the smoothed and the smooth algorithm.
struct Engine {
    const Problem &problem;
    bool smoothed;
    double L;
    double L_smooth;
    double epsilon;
    Index max_iter;
    Vector x0;
    bool audit_subproblem;
    bool sequence_proxy;

    std::function<double(Index)> mu;
    std::function<Vector(const Vector &, double)> gradient;
    std::function<double(const Vector &, double)> smooth_value;
    std::function<BetaChoice(Index, const ExtrapolationState &)> step1;
    std::function<double(Index)> fallback_3b;
    std::function<double(Index)> fallback_3b2;
};

Vector start_point(const std::optional<Vector> &x0, const BoxSet &box) {
    if (!x0)
        return Vector::Zero(box.dim());
    require_dim(*x0, box.dim(), "solver x0");
    require_finite(*x0, "solver x0");
    if (!box.contains(*x0))
        throw ContractViolation("solver x0 must lie in the box");
    return *x0;
}

double resolve_L(const std::optional<double> &L, double L_smooth) {
    const double value = L.value_or(2.0 * L_smooth);
    if (!(value > L_smooth) || !std::isfinite(value))
        throw ContractViolation("solver: L must exceed the smooth Lipschitz constant");
    return value;
}

SolveResult run(const Engine &e, const TheoryConstants &constants) {
    const BoxSet &box = e.problem.box();
    const double lambda = e.problem.lambda();
    const EnergyKind kind = e.smoothed ? EnergyKind::H : EnergyKind::W;
    EnergyMonitor monitor(kind, constants, e.sequence_proxy);

    SolveResult result;
    result.constants = constants;

    Vector x_prev = e.x0;
    Vector x_cur = e.x0;
    ExtrapolationState state;
    Index k = 1;

    auto abort = [&](const std::string &what) {
        throw SolverAborted("solver aborted at k=" + std::to_string(k) + ": " + what, result.trace);
    };

    struct Step {
        Vector x;
        std::size_t ties;
        Index bad;
    };
    auto threshold = [&](double beta, double mu_k) -> Step {
        const Vector y = x_cur + beta * (x_cur - x_prev);
        const Vector grad = e.gradient(y, mu_k);
        ++result.gradient_evaluations;
        if (!grad.allFinite())
            abort("non-finite gradient");
        const SubproblemInput in{y, grad, mu_k, e.L, lambda, box};
        HardThresholdResult r = hard_threshold_step(in);
        Index bad = 0;
        if (e.audit_subproblem)
            bad = static_cast<Index>(audit_separability(in, r).size());
        return {std::move(r.x_next), r.tie_indices.size(), bad};
    };

    auto energy_objective = [&](const Vector &x, double mu_k, double &f_exact, double &f_smooth) {
        f_exact = e.problem.loss_value(x);
        f_smooth = e.smoothed ? e.smooth_value(x, mu_k) : f_exact;
        if (!std::isfinite(f_exact) || !std::isfinite(f_smooth))
            abort("non-finite loss value");
        return f_smooth + lambda * static_cast<double>(l0_norm(x));
    };

    while (true) {
        const double mu_k = e.mu(k);
        const double mu_km1 = e.mu(k - 1);

        if (k >= 2) {
            bool stop = false;
            if (!e.smoothed || mu_k <= e.epsilon) {
                const Vector g = e.gradient(x_cur, mu_k);
                stop = stopping_check(g, x_cur, e.smoothed ? std::optional<double>(mu_k) : std::nullopt,
                                      e.epsilon);
            }
            if (stop) {
                result.status = SolveStatus::Converged;
                break;
            }
        }
        if (k > e.max_iter) {
            result.status = SolveStatus::IterationCap;
            break;
        }

        const bool prev_equal = same_support(x_prev, x_cur);
        const BetaChoice choice = e.step1(k, state);
        double beta = choice.beta;
        Regime regime = Regime::Step1;
        int evals = 1;
        Step next = threshold(beta, mu_k);
        if (!(prev_equal && same_support(x_cur, next.x))) {
            beta = e.fallback_3b(k);
            regime = Regime::Step3b;
            next = threshold(beta, mu_k);
            ++evals;
            if (!same_support(x_cur, next.x)) {
                beta = e.fallback_3b2(k);
                regime = Regime::Step3b2;
                next = threshold(beta, mu_k);
                ++evals;
            }
        }
        state.t_prev = choice.t_next;
        state.beta = beta;
        state.regime = regime;
        result.separability_failures += next.bad;
        result.threshold_ties += static_cast<Index>(next.ties);

        const BetaCaps caps = e.smoothed ? beta_caps(e.L, e.L_smooth, mu_km1, mu_k)
                                         : beta_caps(e.L, e.L_smooth, 1.0, 1.0);
        const bool cap_ok = beta >= 0.0 && (regime == Regime::Step1    ? (beta < caps.step1)
                                            : regime == Regime::Step3b ? (beta <= caps.step3b)
                                                                       : (beta <= caps.step3b2));
        if (!cap_ok) {
            const double cap = regime == Regime::Step1    ? caps.step1
                               : regime == Regime::Step3b ? caps.step3b
                                                          : caps.step3b2;
            monitor.record({k, ViolationKind::BetaCap, beta, cap});
        }
        if (!box.contains(next.x))
            monitor.record({k + 1, ViolationKind::Infeasible, 0.0, 0.0});

        IterationRecord rec;
        rec.k = k;
        rec.beta = beta;
        rec.regime = regime;
        if (e.smoothed)
            rec.mu = mu_k;
        rec.card = l0_norm(x_cur);
        const double objective_value = energy_objective(x_cur, mu_k, rec.f_exact, rec.f_smooth);
        rec.F = rec.f_exact + lambda * static_cast<double>(rec.card);
        const double step_sq = (x_cur - x_prev).squaredNorm();
        rec.step_norm = std::sqrt(step_sq);
        rec.support_changes_next = !same_support(x_cur, next.x);
        rec.gradient_evaluations = evals;

        IterateBundle bundle;
        bundle.k = k;
        bundle.beta = beta;
        bundle.mu_prev = e.smoothed ? mu_km1 : 1.0;
        bundle.mu_cur = e.smoothed ? mu_k : 1.0;
        bundle.objective_value = objective_value;
        bundle.step_sq = step_sq;
        bundle.prev_support_equal = prev_equal;
        bundle.next_support_equal = !rec.support_changes_next;
        rec.energy = monitor.audit_descent(bundle).energy;
        result.trace.push_back(rec);

        if (rec.support_changes_next)
            ++result.support_change_count;
        result.max_beta = std::max(result.max_beta, beta);

        x_prev = std::move(x_cur);
        x_cur = std::move(next.x);
        ++k;
    }

    // Terminal row for the returned iterate.
    const double mu_k = e.mu(k);
    const double mu_km1 = e.mu(k - 1);
    IterationRecord rec;
    rec.k = k;
    rec.beta = 0.0;
    rec.regime = Regime::Final;
    if (e.smoothed)
        rec.mu = mu_k;
    rec.card = l0_norm(x_cur);
    const double objective_value = energy_objective(x_cur, mu_k, rec.f_exact, rec.f_smooth);
    rec.F = rec.f_exact + lambda * static_cast<double>(rec.card);
    const double step_sq = (x_cur - x_prev).squaredNorm();
    rec.step_norm = std::sqrt(step_sq);
    rec.energy = monitor
                     .audit_final(k, e.smoothed ? mu_km1 : 1.0, e.smoothed ? mu_k : 1.0, objective_value,
                                  step_sq, same_support(x_prev, x_cur))
                     .energy;
    result.trace.push_back(rec);

    result.iterations = k;
    result.final_support = support(x_cur);
    result.x_final = std::move(x_cur);
    result.audit = monitor.summary();
    return result;
}

} // namespace

SolveResult sfiht_solve(const Problem &problem, const SfihtConfig &config) {
    const SmoothableLoss *loss = problem.smoothable_loss();
    if (!loss)
        throw ContractViolation("sfiht_solve: problem loss must be nonsmooth with a smoothing family");
    if (!(config.mu0 > 0.0 && config.mu0 <= loss->mu_bar()))
        throw ContractViolation("sfiht_solve: mu0 must lie in (0, mu_bar]");
    if (!(config.epsilon > 0.0))
        throw ContractViolation("sfiht_solve: epsilon must be positive");
    if (config.max_iter < 1)
        throw ContractViolation("sfiht_solve: max_iter must be positive");
    if (!(config.alpha > 0.0))
        throw ContractViolation("sfiht_solve: alpha must be positive");
    if (config.beta_strategy == BetaStrategy::SequenceConvergent &&
        !(config.sigma >= 0.5 && config.sigma <= 1.0))
        throw ContractViolation("sfiht_solve: the sequence-convergent rule needs sigma in [1/2, 1]");

    const SmoothingSchedule schedule(config.mu0, config.sigma);
    const double L_smooth = loss->lip_over_mu();
    const double L = resolve_L(config.L, L_smooth);
    const bool zero = config.beta_strategy == BetaStrategy::Zero;

    Engine e{problem,
             true,
             L,
             L_smooth,
             config.epsilon,
             config.max_iter,
             start_point(config.x0, problem.box()),
             config.audit_subproblem,
             config.beta_strategy == BetaStrategy::SequenceConvergent,
             {},
             {},
             {},
             {},
             {},
             {}};
    e.mu = [schedule](Index k) { return schedule.mu(k); };
    e.gradient = [loss](const Vector &y, double mu) { return loss->gradient(y, mu); };
    e.smooth_value = [loss](const Vector &x, double mu) { return loss->evaluate(x, mu); };
    e.step1 = [schedule, config](Index k, const ExtrapolationState &s) {
        return choose_beta_step1(k, schedule, config.beta_strategy, s, config.alpha);
    };
    e.fallback_3b = [=](Index k) {
        return zero ? 0.0 : beta_caps(L, L_smooth, schedule.mu(k - 1), schedule.mu(k)).step3b;
    };
    e.fallback_3b2 = [=](Index k) {
        return zero ? 0.0 : beta_caps(L, L_smooth, schedule.mu(k - 1), schedule.mu(k)).step3b2;
    };

    const TheoryConstants c =
        smoothed_constants(problem.box(), problem.lambda(), L, L_smooth, loss->kappa(), config.mu0);
    return run(e, c);
}

SolveResult siht_solve(const Problem &problem, SfihtConfig config) {
    config.beta_strategy = BetaStrategy::Zero;
    return sfiht_solve(problem, config);
}

SolveResult fiht_solve(const Problem &problem, const FihtConfig &config) {
    const SmoothLoss *loss = problem.smooth_loss();
    if (!loss)
        throw ContractViolation("fiht_solve: problem loss must be smooth");
    if (!(config.alpha > 0.0))
        throw ContractViolation("fiht_solve: alpha must be positive");
    if (!(config.epsilon > 0.0))
        throw ContractViolation("fiht_solve: epsilon must be positive");
    if (config.max_iter < 1)
        throw ContractViolation("fiht_solve: max_iter must be positive");

    const double L_smooth = loss->lip();
    const double L = resolve_L(config.L, L_smooth);
    const BetaCaps caps = beta_caps(L, L_smooth, 1.0, 1.0);
    const bool extrapolate = config.extrapolate;
    const bool scaled = config.fallback == FihtFallback::PaperScaled;
    const double alpha = config.alpha;

    Engine e{problem,
             false,
             L,
             L_smooth,
             config.epsilon,
             config.max_iter,
             start_point(config.x0, problem.box()),
             config.audit_subproblem,
             false,
             {},
             {},
             {},
             {},
             {},
             {}};
    e.mu = [](Index) { return 1.0; };
    e.gradient = [loss](const Vector &y, double) { return loss->gradient(y); };
    e.smooth_value = [loss](const Vector &x, double) { return loss->evaluate(x); };
    e.step1 = [=](Index k, const ExtrapolationState &s) {
        const double kd = static_cast<double>(k);
        return BetaChoice{extrapolate ? (kd - 1.0) / (kd + alpha - 1.0) : 0.0, s.t_prev};
    };
    auto fallback = [=](double cap) {
        return [=](Index k) {
            if (!extrapolate)
                return 0.0;
            const double kd = static_cast<double>(k);
            return scaled ? std::sqrt(kd / (kd + 1.0) * cap * cap) : cap;
        };
    };
    e.fallback_3b = fallback(caps.step3b);
    e.fallback_3b2 = fallback(caps.step3b2);

    const TheoryConstants c = smooth_constants(problem.box(), problem.lambda(), L, L_smooth);
    return run(e, c);
}

SolveResult iht_solve(const Problem &problem, FihtConfig config) {
    config.extrapolate = false;
    return fiht_solve(problem, config);
}

} // namespace l0box
