// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/problem.hpp"

#include <cmath>

namespace l0box {

namespace {

void check_lambda(double lambda) {
    // lambda == 0 is admitted: it turns the penalty off, which the oracle and
    // the unpenalized reductions rely on.
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw ContractViolation("Problem: lambda must be finite and nonnegative");
}

} // namespace

Problem::Problem(std::shared_ptr<const SmoothableLoss> loss, BoxSet box, double lambda)
    : smoothable_(std::move(loss)), box_(std::move(box)), lambda_(lambda) {
    if (!smoothable_)
        throw ContractViolation("Problem: null loss");
    if (smoothable_->dim() != box_.dim())
        throw ContractViolation("Problem: loss dimension differs from box dimension");
    check_lambda(lambda_);
}

Problem::Problem(std::shared_ptr<const SmoothLoss> loss, BoxSet box, double lambda)
    : smooth_(std::move(loss)), box_(std::move(box)), lambda_(lambda) {
    if (!smooth_)
        throw ContractViolation("Problem: null loss");
    if (smooth_->dim() != box_.dim())
        throw ContractViolation("Problem: loss dimension differs from box dimension");
    check_lambda(lambda_);
}

double Problem::loss_value(const Vector &x) const {
    return smooth_ ? smooth_->evaluate(x) : smoothable_->evaluate_exact(x);
}

ObjectiveValue objective(const Problem &problem, const Vector &x) {
    require_dim(x, problem.dim(), "objective");
    const double f = problem.loss_value(x);
    const Index card = l0_norm(x);
    return {f, f + problem.lambda() * static_cast<double>(card), card};
}

} // namespace l0box
