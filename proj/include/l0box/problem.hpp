// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"
#include "l0box/smoothing.hpp"

#include <memory>

namespace l0box {

/// min f(x) + lambda * ||x||_0 over a box, with f either nonsmooth (given
/// with a smoothing family) or smooth.
class Problem {
  public:
    Problem(std::shared_ptr<const SmoothableLoss> loss, BoxSet box, double lambda);
    Problem(std::shared_ptr<const SmoothLoss> loss, BoxSet box, double lambda);

    bool is_smooth() const { return smooth_ != nullptr; }
    /// nullptr when the loss is smooth.
    const SmoothableLoss *smoothable_loss() const { return smoothable_.get(); }
    /// nullptr when the loss is nonsmooth.
    const SmoothLoss *smooth_loss() const { return smooth_.get(); }

    const BoxSet &box() const { return box_; }
    double lambda() const { return lambda_; }
    Index dim() const { return box_.dim(); }

    /// Exact loss value f(x).
    double loss_value(const Vector &x) const;

  private:
    std::shared_ptr<const SmoothableLoss> smoothable_;
    std::shared_ptr<const SmoothLoss> smooth_;
    BoxSet box_;
    double lambda_;
};

struct ObjectiveValue {
    double f_value;
    double F_value;
    Index card;
};

/// f(x), F(x) = f(x) + lambda * ||x||_0 and ||x||_0.
ObjectiveValue objective(const Problem &problem, const Vector &x);

} // namespace l0box
