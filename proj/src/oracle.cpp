// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace l0box {

namespace {

void guard_dim(const Problem &problem, const char *what) {
    if (problem.dim() > kOracleMaxDim)
        throw ContractViolation(std::string(what) + ": dimension exceeds the oracle limit of 12");
}

// Box with the zero set collapsed to {0}.
struct RestrictedBox {
    const BoxSet &box;
    std::vector<bool> fixed;

    double project(Index i, double v) const { return fixed[i] ? 0.0 : box.project(i, v); }
    Vector project(const Vector &x) const {
        Vector out(x.size());
        for (Index i = 0; i < x.size(); ++i)
            out[i] = project(i, x[i]);
        return out;
    }
};

RestrictedSolution solve_smooth(const SmoothLoss &loss, const RestrictedBox &rbox,
                                const RestrictedOptions &opt, Vector x) {
    const double L = loss.lip();
    RestrictedSolution out;
    if (L == 0.0) {
        // Constant loss: any feasible point is optimal.
        out.x = x;
        out.value = loss.evaluate(x);
        return out;
    }
    Index t = 0;
    for (; t < opt.max_iter; ++t) {
        const Vector g = loss.gradient(x);
        const Vector next = rbox.project(Vector(x - g / L));
        const double gmap = L * (x - next).norm();
        x = next;
        if (gmap <= opt.tol)
            break;
    }
    out.x = x;
    out.value = loss.evaluate(x);
    out.iterations = t;
    out.precision_flag = t >= opt.max_iter;
    return out;
}

RestrictedSolution descend_nonsmooth(const SmoothableLoss &loss, const RestrictedBox &rbox,
                                     const RestrictedOptions &opt, Vector x) {
    auto restricted_subgradient = [&](const Vector &z) {
        Vector g = loss.subgradient(z);
        for (Index i = 0; i < g.size(); ++i)
            if (rbox.fixed[i])
                g[i] = 0.0;
        return g;
    };

    RestrictedSolution out;
    out.x = x;
    out.value = loss.evaluate_exact(x);
    out.precision_flag = true;

    Vector g = restricted_subgradient(x);
    const double g0 = g.norm();
    if (out.value == 0.0 || g0 == 0.0) {
        // f >= 0 for every loss here. A zero subgradient only certifies
        // optimality for convex losses; the extra starts cover the rest.
        out.precision_flag = false;
        return out;
    }
    const double c = out.value / g0;

    for (Index t = 1; t <= opt.max_iter; ++t) {
        const double gn = g.norm();
        if (gn == 0.0) {
            out.precision_flag = false;
            break;
        }
        x = rbox.project(Vector(x - (c / std::sqrt(static_cast<double>(t))) * (g / gn)));
        const double v = loss.evaluate_exact(x);
        if (v < out.value) {
            out.value = v;
            out.x = x;
        }
        out.iterations = t;
        g = restricted_subgradient(x);
    }
    return out;
}

// The censored loss is flat wherever A_i x <= 0, so a single start can stall
// at a kink (x = 0 is the usual one). Also try +-1/2 projected into the
// restricted box and keep the best value.
RestrictedSolution solve_nonsmooth(const SmoothableLoss &loss, const RestrictedBox &rbox,
                                   const RestrictedOptions &opt, const Vector &x0) {
    RestrictedSolution best = descend_nonsmooth(loss, rbox, opt, x0);
    Index total = best.iterations;
    for (double c : {0.5, -0.5}) {
        const Vector start = rbox.project(Vector::Constant(x0.size(), c));
        if (start == x0)
            continue;
        RestrictedSolution r = descend_nonsmooth(loss, rbox, opt, start);
        total += r.iterations;
        if (r.value < best.value)
            best = std::move(r);
    }
    // Polyak steps toward the lower bound f = 0 from the best point. Linear
    // convergence when the restricted problem interpolates (sharp zero
    // minimum), where c/sqrt(t) crawls; otherwise only the best iterate counts.
    Vector x = best.x;
    Vector g = loss.subgradient(x);
    for (Index t = 1; t <= opt.max_iter; ++t) {
        for (Index i = 0; i < g.size(); ++i)
            if (rbox.fixed[i])
                g[i] = 0.0;
        const double fx = loss.evaluate_exact(x);
        const double gg = g.squaredNorm();
        if (fx == 0.0 || gg == 0.0)
            break;
        x = rbox.project(Vector(x - (fx / gg) * g));
        const double v = loss.evaluate_exact(x);
        ++total;
        if (v < best.value) {
            best.value = v;
            best.x = x;
        }
        g = loss.subgradient(x);
    }
    if (best.value == 0.0)
        best.precision_flag = false;
    best.iterations = total;
    return best;
}

} // namespace

RestrictedSolution solve_restricted(const Problem &problem, const SupportSet &zeros,
                                    const RestrictedOptions &options) {
    guard_dim(problem, "solve_restricted");
    if (zeros.dim() != problem.dim())
        throw ContractViolation("solve_restricted: zero set dimension differs from problem");
    RestrictedBox rbox{problem.box(), std::vector<bool>(static_cast<std::size_t>(problem.dim()), false)};
    for (Index j : zeros.zero_indices())
        rbox.fixed[static_cast<std::size_t>(j)] = true;

    Vector x0 = Vector::Zero(problem.dim());
    if (options.init) {
        require_dim(*options.init, problem.dim(), "solve_restricted(init)");
        require_finite(*options.init, "solve_restricted(init)");
        x0 = rbox.project(*options.init);
    }
    if (problem.is_smooth())
        return solve_smooth(*problem.smooth_loss(), rbox, options, x0);
    return solve_nonsmooth(*problem.smoothable_loss(), rbox, options, x0);
}

SupportCertificate certify_support(const Problem &problem, const SupportSet &zeros,
                                   const RestrictedOptions &options) {
    const RestrictedSolution sol = solve_restricted(problem, zeros, options);
    SupportCertificate cert;
    cert.support = zeros;
    cert.restricted_minimizer = sol.x;
    cert.restricted_value = sol.value;
    cert.F_value = objective(problem, sol.x).F_value;
    cert.precision_flag = sol.precision_flag;

    const SupportSet own = support(sol.x);
    if (own == zeros) {
        cert.is_local_min_of_F = true;
        return cert;
    }
    // Extra exact zeros: the point must also solve its own restricted problem.
    RestrictedOptions again = options;
    again.init = sol.x;
    const RestrictedSolution re = solve_restricted(problem, own, again);
    const bool coarse = sol.precision_flag || re.precision_flag;
    cert.precision_flag = coarse;
    const double tol = coarse ? 1e-3 : 1e-8;
    cert.is_local_min_of_F = std::abs(re.value - sol.value) <= tol * (1.0 + std::abs(sol.value));
    return cert;
}

std::vector<SupportCertificate> enumerate_local_minimizers(const Problem &problem,
                                                           const RestrictedOptions &options) {
    guard_dim(problem, "enumerate_local_minimizers");
    const Index n = problem.dim();
    std::vector<SupportCertificate> out;
    out.reserve(static_cast<std::size_t>(1) << n);
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask)
        out.push_back(certify_support(problem, SupportSet::from_mask(n, mask), options));
    return out;
}

Vector finite_diff_gradient(const std::function<double(const Vector &)> &f, const Vector &x) {
    Vector g(x.size());
    Vector probe = x;
    for (Index i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
        probe[i] = x[i] + h;
        const double up = f(probe);
        probe[i] = x[i] - h;
        const double down = f(probe);
        probe[i] = x[i];
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

Vector finite_diff_gradient(const SmoothableLoss &loss, const Vector &x, double mu) {
    return finite_diff_gradient([&](const Vector &z) { return loss.evaluate(z, mu); }, x);
}

Vector finite_diff_gradient(const SmoothLoss &loss, const Vector &x) {
    return finite_diff_gradient([&](const Vector &z) { return loss.evaluate(z); }, x);
}

} // namespace l0box
