// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"
#include "l0box/problem.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace l0box {

/// Largest dimension the exhaustive oracle accepts (2^12 restricted solves).
inline constexpr Index kOracleMaxDim = 12;

struct RestrictedOptions {
    Index max_iter = 1'000'000;
    /// Stop when the gradient-map norm falls below this (smooth losses only).
    double tol = 1e-9;
    /// Starting point; projected onto the restricted box. Default 0.
    std::optional<Vector> init;
};

struct RestrictedSolution {
    Vector x;
    double value = 0.0; ///< exact loss f(x)
    Index iterations = 0;
    /// Set when the tolerance was not certified within the budget. Always set
    /// for nonsmooth losses, whose subgradient method has no stopping test.
    bool precision_flag = false;
};

/// min f(x) over the box with x_j = 0 for every j in `zeros`.
/// Smooth losses: projected gradient with step 1/L_f. Nonsmooth losses:
/// projected normalized subgradient with step c/sqrt(t), best iterate kept, from
/// the given start and from +-1/2 projected, then Polyak steps toward f = 0
/// from the best of those.
RestrictedSolution solve_restricted(const Problem &problem, const SupportSet &zeros,
                                    const RestrictedOptions &options = {});

struct SupportCertificate {
    SupportSet support; ///< declared zero set
    Vector restricted_minimizer;
    double restricted_value = 0.0; ///< f at the minimizer
    double F_value = 0.0;          ///< f + lambda * ||x||_0 at the minimizer
    bool is_local_min_of_F = false;
    bool precision_flag = false;
};

/// Restricted solve on one zero set plus the local-minimizer test: the
/// minimizer must also solve the problem restricted to its own zero set, to
/// 1e-8 in value (1e-3 when either solve is precision-flagged).
SupportCertificate certify_support(const Problem &problem, const SupportSet &zeros,
                                   const RestrictedOptions &options = {});

/// certify_support over all 2^n zero sets, ordered by bit mask.
std::vector<SupportCertificate> enumerate_local_minimizers(const Problem &problem,
                                                           const RestrictedOptions &options = {});

/// Central differences with h = 1e-6 * max(1, |x_i|).
Vector finite_diff_gradient(const std::function<double(const Vector &)> &f, const Vector &x);
Vector finite_diff_gradient(const SmoothableLoss &loss, const Vector &x, double mu);
Vector finite_diff_gradient(const SmoothLoss &loss, const Vector &x);

} // namespace l0box
