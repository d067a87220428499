// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Energies, weights and step bounds are recomputed here from
// the trace rows with independent formulas rather than read from the monitor.

#include "oracles.hpp"

#include "l0box/bench.hpp"
#include "l0box/oracle.hpp"
#include "l0box/subproblem.hpp"
#include "l0box/trace.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace l0box;

namespace {

// ---- pinned tolerances ----
constexpr int kSubproblemSamples = 100000;
constexpr double kGridGap = 1e-7;
constexpr double kSubproblemSeconds = 10.0;
constexpr int kSeeds = 20;
constexpr double kDescentSeconds = 120.0;
constexpr double kEnergySlack = 1e-10;  // relative, monotonicity
constexpr double kWeightSlack = 1e-12;  // relative, beta-weight inequality
constexpr double kStepSlack = 1e-12;    // support-change step bounds
constexpr double kEnergyMatch = 1e-9;   // recomputed vs reported energy
constexpr double kTailFraction = 0.25;
constexpr int kOracleInstances = 10;
constexpr double kOracleTol = 1e-5;
constexpr double kOracleTolFlagged = 1e-3;
constexpr double kDeltaSlack = 1e-12;
constexpr int kWinsNeeded = 18;
constexpr int kQuarterNeeded = 18;
constexpr int kSlopeNeeded = 16;
constexpr double kRateEpsilon43 = 1e-10;
constexpr int kSmoothingSamples = 1000;
constexpr double kKappaSlack = 1e-12;
constexpr double kFdTol = 1e-5;
constexpr double kContinuityTol = 1e-12;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char *name, const Outcome &o) {
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---- 1: subproblem ----

Outcome criterion_subproblem() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(20260101);
    int gap_fail = 0, branch_fail = 0;
    double worst = 0.0;
    for (int t = 0; t < kSubproblemSamples; ++t) {
        const auto p = testutil::random_scalar(gen);
        const Vector y = Vector::Constant(1, p.y), g = Vector::Constant(1, p.g);
        const BoxSet box(Vector::Constant(1, p.lo), Vector::Constant(1, p.hi));
        const double x = hard_threshold_step({y, g, p.mu, p.L, p.lambda, box}).x_next[0];

        // Two-candidate argmin by direct comparison; ties go to 0.
        const double s = p.y - p.mu / p.L * p.g;
        const double proj = std::clamp(s, p.lo, p.hi);
        const double pick = p.q(proj) < p.q(0.0) ? proj : 0.0;
        if ((pick == 0.0) != (x == 0.0))
            ++branch_fail;

        const auto grid = testutil::grid_search(p);
        const double gap = std::abs(p.q(x) - grid.value);
        worst = std::max(worst, p.q(x) - grid.value);
        if (gap > kGridGap && p.q(x) > grid.value)
            ++gap_fail;
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << kSubproblemSamples << " samples, grid gap failures " << gap_fail << " (worst excess " << fmt("%.2e", worst)
       << "), branch mismatches " << branch_fail << ", " << fmt("%.2f", secs) << " s";
    return {gap_fail == 0 && branch_fail == 0 && secs < kSubproblemSeconds, os.str()};
}

// ---- 2 and 3: descent and step bounds on desk runs ----

struct TraceCheck {
    int energy_increase = 0;
    int energy_mismatch = 0;
    int beta_weight = 0;
    int step_bound = 0;
    bool tail_stable = true;
    Index support_changes = 0;
};

// Recomputes H or W and the Lemma inequalities from the rows.
TraceCheck check_trace(const SolveResult &r, const Problem &p, double mu0) {
    TraceCheck c;
    const auto &tr = r.trace;
    const bool smoothed = !p.is_smooth();
    const double L = r.constants.L;
    const double Ls = smoothed ? p.smoothable_loss()->lip_over_mu() : p.smooth_loss()->lip();
    const double kappa = smoothed ? p.smoothable_loss()->kappa() : 0.0;
    const double lambda = p.lambda();

    // nu and delta straight from the box.
    double nu = 2.0 * lambda / L, delta = std::sqrt(2.0 * lambda / L);
    for (Index i = 0; i < p.dim(); ++i) {
        for (double bnd : {p.box().lower()[i], p.box().upper()[i]}) {
            if (bnd != 0.0 && std::isfinite(bnd)) {
                nu = std::min(nu, bnd * bnd / mu0);
                delta = std::min(delta, std::abs(bnd));
            }
        }
    }

    auto changed = [&](std::size_t idx) { return idx < tr.size() && tr[idx].support_changes_next; };
    double prev_energy = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const auto &row = tr[i];
        const double mu_k = smoothed ? *row.mu : 1.0;
        const double mu_km1 = smoothed ? (i == 0 ? mu_k : *tr[i - 1].mu) : 1.0;
        const bool prev_eq = i == 0 || !changed(i - 1);
        const bool last = row.regime == Regime::Final;
        const bool next_eq = !last && !changed(i);
        const bool three = prev_eq && next_eq;
        const double b = row.beta;

        double w;
        if (smoothed)
            w = three ? L / 4.0 / mu_km1 + L / 4.0 * b * b / mu_k : (L - Ls) / 8.0 / mu_km1;
        else
            w = three ? L / 4.0 * (1.0 + b * b) : (L - Ls) / 8.0;
        const double step_sq = row.step_norm * row.step_norm;
        const double energy = row.f_smooth + lambda * static_cast<double>(row.card) + kappa * mu_k + w * step_sq;

        if (std::abs(energy - row.energy) > kEnergyMatch * (1.0 + std::abs(energy)))
            ++c.energy_mismatch;
        if (i > 0 && energy - prev_energy > kEnergySlack * (1.0 + std::abs(prev_energy)))
            ++c.energy_increase;
        prev_energy = energy;

        if (!last) {
            const double coeff = next_eq ? L / (2.0 * mu_k) : (2.0 * L - Ls) / (2.0 * mu_k);
            if (coeff * b * b > w * (1.0 + kWeightSlack))
                ++c.beta_weight;
        }
        if (i > 0 && changed(i - 1)) {
            // Step x^{k-1} -> x^k changed the support.
            if (smoothed ? step_sq < nu * mu_km1 * (1.0 - kStepSlack)
                         : row.step_norm < delta * (1.0 - kStepSlack))
                ++c.step_bound;
        }
    }
    const std::size_t tail_start = tr.size() - static_cast<std::size_t>(kTailFraction * static_cast<double>(tr.size()));
    for (std::size_t i = tail_start; i + 1 < tr.size(); ++i)
        if (tr[i].support_changes_next)
            c.tail_stable = false;
    c.support_changes = r.support_change_count;
    return c;
}

struct DeskRun {
    ExampleId example;
    std::uint64_t seed;
    TraceCheck check;
    SolveResult result;
};

std::vector<DeskRun> desk_runs;
double desk_seconds = 0.0;

void run_desk() {
    const auto t0 = std::chrono::steady_clock::now();
    for (auto ex : {ExampleId::LinReg41, ExampleId::Censored42, ExampleId::LeastSq43}) {
        for (int s = 1; s <= kSeeds; ++s) {
            ExperimentSpec spec = default_spec(ex);
            spec.seed = static_cast<std::uint64_t>(s);
            const Problem p = make_problem(generate_instance(spec), ex, spec.lambda);
            SolveResult r = run_solver(p, spec, spec.solver);
            const TraceCheck c = check_trace(r, p, p.is_smooth() ? 1.0 : spec.mu0);
            desk_runs.push_back({ex, spec.seed, c, std::move(r)});
        }
    }
    desk_seconds = seconds_since(t0);
}

Outcome criterion_descent() {
    int inc = 0, mismatch = 0, weight = 0, monitor = 0;
    for (const auto &d : desk_runs) {
        inc += d.check.energy_increase;
        mismatch += d.check.energy_mismatch;
        weight += d.check.beta_weight;
        monitor += static_cast<int>(d.result.audit.count(ViolationKind::EnergyIncrease) +
                                    d.result.audit.count(ViolationKind::BetaWeight));
    }
    std::ostringstream os;
    os << desk_runs.size() << " runs, energy increases " << inc << ", beta-weight violations " << weight
       << ", energy column mismatches " << mismatch << ", monitor-reported " << monitor << ", "
       << fmt("%.1f", desk_seconds) << " s";
    return {inc == 0 && weight == 0 && mismatch == 0 && monitor == 0 && desk_seconds < kDescentSeconds, os.str()};
}

Outcome criterion_stabilization() {
    int step = 0, unstable = 0;
    Index changes = 0;
    for (const auto &d : desk_runs) {
        step += d.check.step_bound;
        unstable += d.check.tail_stable ? 0 : 1;
        changes += d.check.support_changes;
    }
    std::ostringstream os;
    os << "step-bound violations " << step << ", runs with support changes in the last 25% " << unstable
       << ", support changes in total " << changes;
    return {step == 0 && unstable == 0, os.str()};
}

// ---- 4: oracle certification ----

Outcome criterion_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    int checked = 0, matched = 0, delta_fail = 0, flagged = 0;
    double worst = 0.0;
    std::string first_miss;
    for (auto ex : {ExampleId::LinReg41, ExampleId::Censored42, ExampleId::LeastSq43}) {
        for (Index n : {4, 6, 8}) {
            for (int s = 1; s <= kOracleInstances; ++s) {
                const ExperimentSpec spec = tiny_spec(ex, n, static_cast<std::uint64_t>(s), 0.01);
                const Problem p = make_problem(generate_instance(spec), ex, spec.lambda);
                const SolveResult r = run_solver(p, spec, spec.solver);
                const double F = objective(p, r.x_final).F_value;
                const SupportSet zs = support(r.x_final);
                ++checked;

                bool ok = false;
                if (p.is_smooth()) {
                    // Full enumeration is cheap for the quadratic.
                    for (const auto &c : enumerate_local_minimizers(p)) {
                        if (c.support == zs && c.is_local_min_of_F &&
                            support(c.restricted_minimizer) == zs) {
                            const double gap = std::abs(c.F_value - F);
                            worst = std::max(worst, gap);
                            ok = gap <= kOracleTol;
                        }
                    }
                    for (Index i = 0; i < r.x_final.size(); ++i)
                        if (r.x_final[i] != 0.0 && std::abs(r.x_final[i]) < r.constants.delta - kDeltaSlack)
                            ++delta_fail;
                } else {
                    const auto c = certify_support(p, zs);
                    flagged += c.precision_flag ? 1 : 0;
                    const double tol = c.precision_flag ? kOracleTolFlagged : kOracleTol;
                    const double gap = std::abs(c.F_value - F);
                    worst = std::max(worst, gap);
                    ok = c.is_local_min_of_F && support(c.restricted_minimizer) == zs && gap <= tol;
                }
                if (ok)
                    ++matched;
                else if (first_miss.empty())
                    first_miss = std::string(" first miss: example ") + to_string(ex) + " n=" + std::to_string(n) +
                                 " seed=" + std::to_string(s);
            }
        }
    }
    std::ostringstream os;
    os << matched << "/" << checked << " certified, worst |dF| " << fmt("%.2e", worst) << ", precision-flagged "
       << flagged << ", lower-bound violations " << delta_fail << ", " << fmt("%.1f", seconds_since(t0)) << " s"
       << first_miss;
    return {matched == checked && delta_fail == 0, os.str()};
}

// ---- 5: acceleration trend ----

Outcome criterion_acceleration() {
    int wins41 = 0, ties41 = 0, wins43 = 0;
    for (auto ex : {ExampleId::LinReg41, ExampleId::LeastSq43}) {
        for (int s = 1; s <= kSeeds; ++s) {
            ExperimentSpec spec = default_spec(ex);
            spec.seed = static_cast<std::uint64_t>(s);
            const auto rep = run_experiment(spec);
            const Index fast = rep.runs[0].result.iterations, slow = rep.runs[1].result.iterations;
            if (ex == ExampleId::LinReg41) {
                wins41 += fast < slow;
                ties41 += fast == slow;
            } else {
                wins43 += fast < slow;
            }
        }
    }
    std::ostringstream os;
    os << "Ex41 SFIHT<SIHT " << wins41 << "/" << kSeeds << " (ties " << ties41 << "), Ex43 FIHT<IHT " << wins43 << "/"
       << kSeeds << ", need " << kWinsNeeded;
    return {wins41 >= kWinsNeeded && wins43 >= kWinsNeeded, os.str()};
}

// ---- 6: rate probes ----

Outcome criterion_rates() {
    int quarter_ok = 0, quarter_applicable = 0, slope_ok = 0;
    double worst_ratio = 0.0, worst_slope = -1e300;
    for (int s = 1; s <= kSeeds; ++s) {
        ExperimentSpec spec = default_spec(ExampleId::LeastSq43);
        spec.seed = static_cast<std::uint64_t>(s);
        spec.epsilon = kRateEpsilon43;
        const Problem p = make_problem(generate_instance(spec), spec.example, spec.lambda);
        const auto r = run_solver(p, spec, SolverKind::Fiht);
        const auto probe = rate_probe(r.trace, RateMode::FihtRate);
        quarter_applicable += probe.applicable;
        quarter_ok += probe.applicable && probe.pass;
        if (probe.applicable)
            worst_ratio = std::max(worst_ratio, probe.quarter_ratio);
    }
    for (const auto &d : desk_runs) {
        if (d.example != ExampleId::Censored42)
            continue;
        // Ex 4.2 desk runs use the FISTA-like preset with sigma = 0.7.
        const auto probe = rate_probe(d.result.trace, RateMode::SfihtRate, 0.7);
        slope_ok += probe.pass;
        if (!probe.beyond_measurement)
            worst_slope = std::max(worst_slope, probe.slope);
    }
    std::ostringstream os;
    os << "Ex43 quarter ratio < 1 on " << quarter_ok << "/" << kSeeds << " (applicable " << quarter_applicable
       << ", worst " << fmt("%.3g", worst_ratio) << "), Ex42 slope <= -0.56 on " << slope_ok << "/" << kSeeds
       << " (worst " << fmt("%.3g", worst_slope) << ")";
    return {quarter_ok >= kQuarterNeeded && slope_ok >= kSlopeNeeded, os.str()};
}

// ---- 7: smoothing contract ----

Outcome criterion_smoothing() {
    std::mt19937_64 gen(777);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto gaussian = [&](Index m, Index n) {
        Matrix A(m, n);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j)
                A(i, j) = nd(gen);
        return A;
    };
    auto gvec = [&](Index n) {
        Vector v(n);
        for (Index i = 0; i < n; ++i)
            v[i] = nd(gen);
        return v;
    };
    int bound_fail = 0, fd_fail = 0, cont_fail = 0;
    double worst_fd = 0.0;

    const Matrix A1 = gaussian(8, 6);
    const Vector b1 = gvec(8);
    const Matrix A2 = gaussian(12, 6);
    const Vector b2 = gvec(12).cwiseAbs();
    const std::vector<std::pair<std::string, std::shared_ptr<const SmoothableLoss>>> losses = {
        {"l1", l1_regression_loss(A1, b1)}, {"censored", censored_regression_loss(A2, b2)}};
    for (const auto &[name, loss] : losses) {
        for (int t = 0; t < kSmoothingSamples; ++t) {
            const BoxSet box = name == "l1" ? BoxSet::uniform(6, -1, 1) : BoxSet::uniform(6, 0, 1);
            const Vector x = box.project(gvec(6));
            const double mu = loss->mu_bar() * (1.0 - u(gen)); // (0, mu_bar]
            if (std::abs(loss->evaluate(x, mu) - loss->evaluate_exact(x)) > loss->kappa() * mu + kKappaSlack)
                ++bound_fail;

            const Vector xi = 0.9 * box.project(gvec(6)) + Vector::Constant(6, name == "l1" ? 0.0 : 0.05);
            const double mu2 = 0.05 + 0.65 * u(gen);
            const Vector fd = finite_diff_gradient(*loss, xi, mu2);
            const Vector an = loss->gradient(xi, mu2);
            const double err = (fd - an).norm() / std::max(1.0, an.norm());
            worst_fd = std::max(worst_fd, err);
            if (err > kFdTol)
                ++fd_fail;
        }
    }
    for (int t = 0; t < kSmoothingSamples; ++t) {
        const double mu = 1e-6 + 2.0 * u(gen);
        for (double z : {mu, -mu}) {
            const double in = std::nextafter(z, 0.0), out = std::nextafter(z, 2.0 * z);
            const auto hi = huber_scalar(in, mu), ho = huber_scalar(out, mu);
            const auto pi = smooth_plus_scalar(in, mu), po = smooth_plus_scalar(out, mu);
            if (std::abs(hi.value - ho.value) > kContinuityTol || std::abs(hi.derivative - ho.derivative) > kContinuityTol ||
                std::abs(pi.value - po.value) > kContinuityTol || std::abs(pi.derivative - po.derivative) > kContinuityTol)
                ++cont_fail;
        }
    }
    std::ostringstream os;
    os << "kappa-bound failures " << bound_fail << ", FD failures " << fd_fail << " (worst " << fmt("%.2e", worst_fd)
       << "), continuity failures " << cont_fail;
    return {bound_fail == 0 && fd_fail == 0 && cont_fail == 0, os.str()};
}

// ---- 8: determinism ----

Outcome criterion_determinism() {
    int differ = 0;
    for (auto ex : {ExampleId::LinReg41, ExampleId::Censored42, ExampleId::LeastSq43}) {
        ExperimentSpec spec = default_spec(ex);
        spec.seed = 12345;
        std::string csv[2];
        for (auto &out : csv) {
            const Problem p = make_problem(generate_instance(spec), ex, spec.lambda);
            std::ostringstream os;
            write_trace_csv(os, run_solver(p, spec, spec.solver).trace);
            out = os.str();
        }
        differ += csv[0] != csv[1];
    }
    return {differ == 0, std::to_string(3 - differ) + "/3 examples produced bitwise-identical trace CSVs"};
}

} // namespace

int main() {
    report(1, "subproblem exactness", criterion_subproblem());
    run_desk();
    report(2, "energy descent", criterion_descent());
    report(3, "support stabilization and step bounds", criterion_stabilization());
    report(4, "local-minimizer certification", criterion_oracle());
    report(5, "acceleration trend", criterion_acceleration());
    report(6, "rate probes", criterion_rates());
    report(7, "smoothing contract", criterion_smoothing());
    report(8, "determinism", criterion_determinism());
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
