// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/subproblem.hpp"

#include <cmath>

namespace l0box {

namespace {

void validate(const SubproblemInput &in) {
    const Index n = in.box.dim();
    require_dim(in.y, n, "hard_threshold_step(y)");
    require_dim(in.grad, n, "hard_threshold_step(grad)");
    require_finite(in.y, "hard_threshold_step(y)");
    require_finite(in.grad, "hard_threshold_step(grad)");
    if (!(in.mu > 0.0) || !std::isfinite(in.mu))
        throw ContractViolation("hard_threshold_step: mu must be positive");
    if (!(in.L > 0.0) || !std::isfinite(in.L))
        throw ContractViolation("hard_threshold_step: L must be positive");
    if (!(in.lambda >= 0.0) || !std::isfinite(in.lambda))
        throw ContractViolation("hard_threshold_step: lambda must be nonnegative");
}

} // namespace

HardThresholdResult hard_threshold_step(const SubproblemInput &in) {
    validate(in);
    const Index n = in.box.dim();
    const double step = in.mu / in.L;
    const double threshold = 2.0 * in.lambda * in.mu / in.L;

    HardThresholdResult out{Vector(n), Vector(n), Vector(n), {}};
    for (Index i = 0; i < n; ++i) {
        const double s = in.y[i] - step * in.grad[i];
        const double p = in.box.project(i, s);
        const double q = p - s;
        const double test = s * s - q * q;
        out.s_point[i] = s;
        out.q_vec[i] = q;
        if (test > threshold) {
            out.x_next[i] = p;
        } else {
            out.x_next[i] = 0.0;
            if (test == threshold)
                out.tie_indices.push_back(i);
        }
    }
    return out;
}

double coordinate_surrogate(const SubproblemInput &in, Index i, double v) {
    const double d = v - in.y[i];
    return in.grad[i] * d + in.L / (2.0 * in.mu) * d * d + (v != 0.0 ? in.lambda : 0.0);
}

double surrogate_value(const SubproblemInput &in, const Vector &x, double f_at_y) {
    require_dim(x, in.box.dim(), "surrogate_value");
    const Vector d = x - in.y;
    return f_at_y + in.grad.dot(d) + in.L / (2.0 * in.mu) * d.squaredNorm() +
           in.lambda * static_cast<double>(l0_norm(x));
}

std::vector<Index> audit_separability(const SubproblemInput &in, const HardThresholdResult &result,
                                      double rel_slack) {
    std::vector<Index> bad;
    for (Index i = 0; i < in.box.dim(); ++i) {
        const double projected = in.box.project(i, result.s_point[i]);
        const double chosen = result.x_next[i];
        const double other = chosen == 0.0 ? projected : 0.0;
        const double c_chosen = coordinate_surrogate(in, i, chosen);
        const double c_other = coordinate_surrogate(in, i, other);
        const double scale = 1.0 + std::abs(c_chosen) + std::abs(c_other) +
                             in.L / (2.0 * in.mu) * in.y[i] * in.y[i];
        if (c_other < c_chosen - rel_slack * scale)
            bad.push_back(i);
    }
    return bad;
}

} // namespace l0box
