// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace l0box {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

/// Raised when a caller breaks an operation's precondition (shape mismatch,
/// NaN input, invalid bounds, out-of-range parameter).
class ContractViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Throws ContractViolation unless every entry of `v` is a finite number.
void require_finite(const Vector &v, const char *what);

/// Throws ContractViolation unless `v.size() == expected`.
void require_dim(const Vector &v, Index expected, const char *what);

/// Componentwise interval [lower, upper] with lower <= 0 <= upper and
/// lower < upper. Bounds may be +-infinity.
class BoxSet {
  public:
    BoxSet(Vector lower, Vector upper);

    /// Same scalar interval in every coordinate.
    static BoxSet uniform(Index dim, double lower, double upper);
    static BoxSet unbounded(Index dim);

    Index dim() const { return lower_.size(); }
    const Vector &lower() const { return lower_; }
    const Vector &upper() const { return upper_; }

    double project(Index i, double value) const {
        return std::min(std::max(value, lower_[i]), upper_[i]);
    }
    Vector project(const Vector &x) const;
    bool contains(const Vector &x) const;

  private:
    Vector lower_;
    Vector upper_;
};

/// Componentwise clamp of x onto the box.
Vector project_box(const Vector &x, const BoxSet &box);

/// The zero set I(x) = {i : x_i == 0} of a vector, with exact comparison.
class SupportSet {
  public:
    SupportSet() = default;
    SupportSet(Index dim, std::vector<Index> zero_indices);

    static SupportSet of(const Vector &x);
    /// Zero set given as a bit mask (bit i set means coordinate i is zero).
    static SupportSet from_mask(Index dim, unsigned long long mask);

    Index dim() const { return dim_; }
    const std::vector<Index> &zero_indices() const { return zeros_; }
    bool is_zero(Index i) const;
    /// Number of nonzero coordinates, i.e. the l0 norm of the source vector.
    Index cardinality() const { return dim_ - static_cast<Index>(zeros_.size()); }
    std::vector<Index> nonzero_indices() const;

    friend bool operator==(const SupportSet &, const SupportSet &) = default;

  private:
    Index dim_ = 0;
    std::vector<Index> zeros_;
};

SupportSet support(const Vector &x);

/// Exact-zero test of two vectors' zero patterns, without materializing sets.
bool same_support(const Vector &a, const Vector &b);

Index l0_norm(const Vector &x);

/// Sup-norm of `grad` over the coordinates where `x` is nonzero; 0 when x == 0.
double restricted_sup_norm(const Vector &grad, const Vector &x);

inline Vector to_vector(std::span<const double> values) {
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

} // namespace l0box
