// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace l0box {

/// Default upper limit for the smoothing parameter (also the default mu0).
inline constexpr double kDefaultMuBar = 0.7;
/// Inflation applied to computed spectral norms before they are used as
/// Lipschitz constants. Power iteration approaches the true value from below.
inline constexpr double kLipschitzSafety = 1.001;

struct ScalarSmoothing {
    double value;
    double derivative;
};

/// Huber-type smoothing of |z|: |z| outside [-mu, mu], z^2/(2mu) + mu/2 inside.
ScalarSmoothing huber_scalar(double z, double mu);

/// Smoothing of max{s, 0}: exact outside [-mu, mu], (s + mu)^2 / (4mu) inside.
ScalarSmoothing smooth_plus_scalar(double s, double mu);

/// A nonsmooth convex loss f together with a smoothing family f~(., mu).
///
/// Implementations guarantee |f~(x, mu) - f(x)| <= kappa() * mu for
/// mu in (0, mu_bar()], and a gradient of f~(., mu) that is
/// (lip_over_mu() / mu)-Lipschitz.
class SmoothableLoss {
  public:
    virtual ~SmoothableLoss() = default;

    virtual Index dim() const = 0;
    virtual double evaluate(const Vector &x, double mu) const = 0;
    virtual Vector gradient(const Vector &x, double mu) const = 0;
    virtual double evaluate_exact(const Vector &x) const = 0;
    /// One element of the subdifferential of the exact loss at x.
    virtual Vector subgradient(const Vector &x) const = 0;

    virtual double kappa() const = 0;
    virtual double lip_over_mu() const = 0;
    virtual double mu_bar() const = 0;
    virtual std::string name() const = 0;
};

/// A convex loss with L_f-Lipschitz gradient.
class SmoothLoss {
  public:
    virtual ~SmoothLoss() = default;

    virtual Index dim() const = 0;
    virtual double evaluate(const Vector &x) const = 0;
    virtual Vector gradient(const Vector &x) const = 0;
    virtual double lip() const = 0;
    virtual std::string name() const = 0;
};

struct SpectralNormEstimate {
    double value = 0.0;
    Index iterations = 0;
    bool zero_matrix = false;
};

/// Power iteration failed to reach its tolerance within the iteration cap.
class SpectralNormError : public std::runtime_error {
  public:
    SpectralNormError(const std::string &msg, double last_estimate)
        : std::runtime_error(msg), last_estimate_(last_estimate) {}
    double last_estimate() const { return last_estimate_; }

  private:
    double last_estimate_;
};

/// Largest singular value of A via power iteration on A^T A.
/// The Rayleigh quotient is iterated until its relative change is below
/// `rel_tol`. Returns 0 with `zero_matrix` set for an all-zero matrix.
SpectralNormEstimate spectral_norm(const Matrix &A, double rel_tol = 1e-8, Index max_iter = 1000);

/// ||A^T A|| inflated by kLipschitzSafety.
double safe_gram_norm(const Matrix &A);

/// f(x) = ||Ax - b||_1 smoothed termwise by huber_scalar.
/// kappa = m/2, lip_over_mu = ||A^T A||.
class L1RegressionLoss final : public SmoothableLoss {
  public:
    L1RegressionLoss(Matrix A, Vector b, double mu_bar = kDefaultMuBar);

    Index dim() const override { return A_.cols(); }
    double evaluate(const Vector &x, double mu) const override;
    Vector gradient(const Vector &x, double mu) const override;
    double evaluate_exact(const Vector &x) const override;
    Vector subgradient(const Vector &x) const override;
    double kappa() const override { return 0.5 * static_cast<double>(A_.rows()); }
    double lip_over_mu() const override { return lip_; }
    double mu_bar() const override { return mu_bar_; }
    std::string name() const override { return "l1_regression"; }

    const Matrix &matrix() const { return A_; }
    const Vector &rhs() const { return b_; }

  private:
    Matrix A_;
    Vector b_;
    double mu_bar_;
    double lip_;
};

/// f(x) = (1/m) ||max{Ax, 0} - b||_1 smoothed by composing huber_scalar with
/// smooth_plus_scalar. lip_over_mu = (3/(2m)) ||A^T A||.
///
/// kappa = 3/4: d/dmu of the inner smoother lies in [0, 1/4], d/dmu of the
/// outer one in [0, 1/2], and the outer one is 1-Lipschitz in its argument.
/// The exact loss is not convex when some b_i > 0 (it is flat for
/// A_i x <= 0), so convexity holds only for data with b <= 0.
class CensoredRegressionLoss final : public SmoothableLoss {
  public:
    CensoredRegressionLoss(Matrix A, Vector b, double mu_bar = kDefaultMuBar);

    Index dim() const override { return A_.cols(); }
    double evaluate(const Vector &x, double mu) const override;
    Vector gradient(const Vector &x, double mu) const override;
    double evaluate_exact(const Vector &x) const override;
    Vector subgradient(const Vector &x) const override;
    double kappa() const override { return 0.75; }
    double lip_over_mu() const override { return lip_; }
    double mu_bar() const override { return mu_bar_; }
    std::string name() const override { return "censored_regression"; }

    const Matrix &matrix() const { return A_; }
    const Vector &rhs() const { return b_; }

  private:
    Matrix A_;
    Vector b_;
    double mu_bar_;
    double lip_;
};

/// f(x) = 0.5 ||Ax - b||^2 with L_f = ||A^T A||.
class LeastSquaresLoss final : public SmoothLoss {
  public:
    LeastSquaresLoss(Matrix A, Vector b);

    Index dim() const override { return A_.cols(); }
    double evaluate(const Vector &x) const override;
    Vector gradient(const Vector &x) const override;
    double lip() const override { return lip_; }
    std::string name() const override { return "least_squares"; }

    const Matrix &matrix() const { return A_; }
    const Vector &rhs() const { return b_; }

  private:
    Matrix A_;
    Vector b_;
    double lip_;
};

std::shared_ptr<const SmoothableLoss> l1_regression_loss(Matrix A, Vector b);
std::shared_ptr<const SmoothableLoss> censored_regression_loss(Matrix A, Vector b);
std::shared_ptr<const SmoothLoss> least_squares_loss(Matrix A, Vector b);

} // namespace l0box
