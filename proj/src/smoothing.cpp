// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/smoothing.hpp"

#include <cmath>

namespace l0box {

namespace {

void require_positive_mu(double mu, const char *what) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ContractViolation(std::string(what) + ": mu must be positive and finite");
}

void check_data(const Matrix &A, const Vector &b, const char *what) {
    if (A.rows() == 0 || A.cols() == 0)
        throw ContractViolation(std::string(what) + ": empty matrix");
    if (b.size() != A.rows())
        throw ContractViolation(std::string(what) + ": b has " + std::to_string(b.size()) +
                                " entries but A has " + std::to_string(A.rows()) + " rows");
    if (!A.allFinite() || !b.allFinite())
        throw ContractViolation(std::string(what) + ": data contains NaN or infinity");
}

double sign(double z) { return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); }

} // namespace

ScalarSmoothing huber_scalar(double z, double mu) {
    require_positive_mu(mu, "huber_scalar");
    if (std::abs(z) > mu)
        return {std::abs(z), sign(z)};
    return {z * z / (2.0 * mu) + 0.5 * mu, z / mu};
}

ScalarSmoothing smooth_plus_scalar(double s, double mu) {
    require_positive_mu(mu, "smooth_plus_scalar");
    if (s > mu)
        return {s, 1.0};
    if (s < -mu)
        return {0.0, 0.0};
    const double t = s + mu;
    return {t * t / (4.0 * mu), t / (2.0 * mu)};
}

SpectralNormEstimate spectral_norm(const Matrix &A, double rel_tol, Index max_iter) {
    if (A.rows() == 0 || A.cols() == 0)
        throw ContractViolation("spectral_norm: empty matrix");
    if (!A.allFinite())
        throw ContractViolation("spectral_norm: matrix contains NaN or infinity");
    if (A.isZero(0.0))
        return {0.0, 0, true};

    // Deterministic start with no structured zero pattern.
    const Index n = A.cols();
    Vector v(n);
    for (Index i = 0; i < n; ++i)
        v[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
    v.normalize();

    double estimate = 0.0;
    for (Index it = 1; it <= max_iter; ++it) {
        const Vector Av = A * v;
        const double rayleigh = Av.squaredNorm();
        Vector w = A.transpose() * Av;
        const double wnorm = w.norm();
        if (wnorm == 0.0) {
            // v landed in the null space; the estimate cannot improve.
            return {std::sqrt(estimate), it, false};
        }
        v = w / wnorm;
        if (it > 1 && std::abs(rayleigh - estimate) <= rel_tol * rayleigh)
            return {std::sqrt(rayleigh), it, false};
        estimate = rayleigh;
    }
    throw SpectralNormError("spectral_norm: no convergence within iteration cap",
                            std::sqrt(estimate));
}

double safe_gram_norm(const Matrix &A) {
    const double s = spectral_norm(A).value;
    return kLipschitzSafety * s * s;
}

L1RegressionLoss::L1RegressionLoss(Matrix A, Vector b, double mu_bar)
    : A_(std::move(A)), b_(std::move(b)), mu_bar_(mu_bar) {
    check_data(A_, b_, "l1_regression_loss");
    lip_ = safe_gram_norm(A_);
}

double L1RegressionLoss::evaluate(const Vector &x, double mu) const {
    require_dim(x, dim(), "l1_regression_loss");
    const Vector r = A_ * x - b_;
    double total = 0.0;
    for (Index i = 0; i < r.size(); ++i)
        total += huber_scalar(r[i], mu).value;
    return total;
}

Vector L1RegressionLoss::gradient(const Vector &x, double mu) const {
    require_dim(x, dim(), "l1_regression_loss");
    Vector r = A_ * x - b_;
    for (Index i = 0; i < r.size(); ++i)
        r[i] = huber_scalar(r[i], mu).derivative;
    return A_.transpose() * r;
}

double L1RegressionLoss::evaluate_exact(const Vector &x) const {
    require_dim(x, dim(), "l1_regression_loss");
    return (A_ * x - b_).lpNorm<1>();
}

Vector L1RegressionLoss::subgradient(const Vector &x) const {
    require_dim(x, dim(), "l1_regression_loss");
    Vector r = A_ * x - b_;
    for (Index i = 0; i < r.size(); ++i)
        r[i] = sign(r[i]);
    return A_.transpose() * r;
}

CensoredRegressionLoss::CensoredRegressionLoss(Matrix A, Vector b, double mu_bar)
    : A_(std::move(A)), b_(std::move(b)), mu_bar_(mu_bar) {
    check_data(A_, b_, "censored_regression_loss");
    lip_ = 1.5 / static_cast<double>(A_.rows()) * safe_gram_norm(A_);
}

double CensoredRegressionLoss::evaluate(const Vector &x, double mu) const {
    require_dim(x, dim(), "censored_regression_loss");
    const Vector a = A_ * x;
    double total = 0.0;
    for (Index i = 0; i < a.size(); ++i)
        total += huber_scalar(smooth_plus_scalar(a[i], mu).value - b_[i], mu).value;
    return total / static_cast<double>(a.size());
}

Vector CensoredRegressionLoss::gradient(const Vector &x, double mu) const {
    require_dim(x, dim(), "censored_regression_loss");
    Vector a = A_ * x;
    for (Index i = 0; i < a.size(); ++i) {
        const ScalarSmoothing inner = smooth_plus_scalar(a[i], mu);
        a[i] = huber_scalar(inner.value - b_[i], mu).derivative * inner.derivative;
    }
    return (A_.transpose() * a) / static_cast<double>(A_.rows());
}

double CensoredRegressionLoss::evaluate_exact(const Vector &x) const {
    require_dim(x, dim(), "censored_regression_loss");
    const Vector a = A_ * x;
    return (a.cwiseMax(0.0) - b_).lpNorm<1>() / static_cast<double>(a.size());
}

Vector CensoredRegressionLoss::subgradient(const Vector &x) const {
    require_dim(x, dim(), "censored_regression_loss");
    Vector a = A_ * x;
    for (Index i = 0; i < a.size(); ++i)
        a[i] = a[i] > 0.0 ? sign(a[i] - b_[i]) : 0.0;
    return (A_.transpose() * a) / static_cast<double>(A_.rows());
}

LeastSquaresLoss::LeastSquaresLoss(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
    check_data(A_, b_, "least_squares_loss");
    lip_ = safe_gram_norm(A_);
}

double LeastSquaresLoss::evaluate(const Vector &x) const {
    require_dim(x, dim(), "least_squares_loss");
    return 0.5 * (A_ * x - b_).squaredNorm();
}

Vector LeastSquaresLoss::gradient(const Vector &x) const {
    require_dim(x, dim(), "least_squares_loss");
    return A_.transpose() * (A_ * x - b_);
}

std::shared_ptr<const SmoothableLoss> l1_regression_loss(Matrix A, Vector b) {
    return std::make_shared<L1RegressionLoss>(std::move(A), std::move(b));
}

std::shared_ptr<const SmoothableLoss> censored_regression_loss(Matrix A, Vector b) {
    return std::make_shared<CensoredRegressionLoss>(std::move(A), std::move(b));
}

std::shared_ptr<const SmoothLoss> least_squares_loss(Matrix A, Vector b) {
    return std::make_shared<LeastSquaresLoss>(std::move(A), std::move(b));
}

} // namespace l0box
