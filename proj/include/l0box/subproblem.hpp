// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"

#include <vector>

namespace l0box {

/// Data of the surrogate
///   Q(x, y, mu) = f(y) + <grad, x - y> + (L / 2mu) ||x - y||^2 + lambda ||x||_0
/// minimized over the box. The smooth-loss case uses mu = 1.
struct SubproblemInput {
    const Vector &y;
    const Vector &grad;
    double mu;
    double L;
    double lambda;
    const BoxSet &box;
};

struct HardThresholdResult {
    Vector x_next;
    /// Gradient point y - (mu / L) grad.
    Vector s_point;
    /// Projection residual P_X(s_point) - s_point.
    Vector q_vec;
    /// Coordinates where s^2 - q^2 equalled the threshold exactly; these are set to 0.
    std::vector<Index> tie_indices;
};

/// Closed-form global minimizer of Q over the box. Coordinate i takes the
/// projected gradient point when s_i^2 - q_i^2 > 2 lambda mu / L and 0
/// otherwise.
HardThresholdResult hard_threshold_step(const SubproblemInput &input);

/// Q(x, y, mu) for a feasible x, with f(y) supplied by the caller.
double surrogate_value(const SubproblemInput &input, const Vector &x, double f_at_y);

/// Q-contribution of coordinate i taking value v, excluding the f(y) constant.
double coordinate_surrogate(const SubproblemInput &input, Index i, double v);

/// Coordinates where the rejected branch (0 vs projected point) has a strictly
/// smaller Q-contribution than the chosen one, beyond a relative slack.
std::vector<Index> audit_separability(const SubproblemInput &input, const HardThresholdResult &result,
                                      double rel_slack = 1e-12);

} // namespace l0box
