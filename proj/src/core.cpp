// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/core.hpp"

#include <cmath>
#include <limits>

namespace l0box {

void require_finite(const Vector &v, const char *what) {
    if (!v.allFinite())
        throw ContractViolation(std::string(what) + ": vector contains NaN or infinity");
}

void require_dim(const Vector &v, Index expected, const char *what) {
    if (v.size() != expected)
        throw ContractViolation(std::string(what) + ": expected dimension " +
                                std::to_string(expected) + ", got " + std::to_string(v.size()));
}

BoxSet::BoxSet(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() == 0)
        throw ContractViolation("BoxSet: dimension must be positive");
    if (lower_.size() != upper_.size())
        throw ContractViolation("BoxSet: lower and upper differ in dimension");
    for (Index i = 0; i < lower_.size(); ++i) {
        const double l = lower_[i], u = upper_[i];
        if (std::isnan(l) || std::isnan(u))
            throw ContractViolation("BoxSet: NaN bound at index " + std::to_string(i));
        if (!(l <= 0.0 && 0.0 <= u && l < u))
            throw ContractViolation("BoxSet: need lower <= 0 <= upper and lower < upper at index " +
                                    std::to_string(i));
    }
}

BoxSet BoxSet::uniform(Index dim, double lower, double upper) {
    return BoxSet(Vector::Constant(dim, lower), Vector::Constant(dim, upper));
}

BoxSet BoxSet::unbounded(Index dim) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return uniform(dim, -inf, inf);
}

Vector BoxSet::project(const Vector &x) const {
    require_dim(x, dim(), "project_box");
    require_finite(x, "project_box");
    return x.cwiseMax(lower_).cwiseMin(upper_);
}

bool BoxSet::contains(const Vector &x) const {
    if (x.size() != dim())
        return false;
    for (Index i = 0; i < x.size(); ++i)
        if (!(lower_[i] <= x[i] && x[i] <= upper_[i]))
            return false;
    return true;
}

Vector project_box(const Vector &x, const BoxSet &box) { return box.project(x); }

SupportSet::SupportSet(Index dim, std::vector<Index> zero_indices)
    : dim_(dim), zeros_(std::move(zero_indices)) {
    for (std::size_t j = 0; j < zeros_.size(); ++j) {
        if (zeros_[j] < 0 || zeros_[j] >= dim_)
            throw ContractViolation("SupportSet: index out of range");
        if (j > 0 && zeros_[j] <= zeros_[j - 1])
            throw ContractViolation("SupportSet: indices must be strictly increasing");
    }
}

SupportSet SupportSet::of(const Vector &x) {
    std::vector<Index> zeros;
    for (Index i = 0; i < x.size(); ++i)
        if (x[i] == 0.0)
            zeros.push_back(i);
    return SupportSet(x.size(), std::move(zeros));
}

SupportSet SupportSet::from_mask(Index dim, unsigned long long mask) {
    if (dim > 63)
        throw ContractViolation("SupportSet::from_mask: dimension above 63");
    std::vector<Index> zeros;
    for (Index i = 0; i < dim; ++i)
        if ((mask >> i) & 1ULL)
            zeros.push_back(i);
    return SupportSet(dim, std::move(zeros));
}

bool SupportSet::is_zero(Index i) const {
    return std::binary_search(zeros_.begin(), zeros_.end(), i);
}

std::vector<Index> SupportSet::nonzero_indices() const {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    std::size_t j = 0;
    for (Index i = 0; i < dim_; ++i) {
        if (j < zeros_.size() && zeros_[j] == i) {
            ++j;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

SupportSet support(const Vector &x) { return SupportSet::of(x); }

bool same_support(const Vector &a, const Vector &b) {
    if (a.size() != b.size())
        return false;
    for (Index i = 0; i < a.size(); ++i)
        if ((a[i] == 0.0) != (b[i] == 0.0))
            return false;
    return true;
}

Index l0_norm(const Vector &x) {
    Index count = 0;
    for (Index i = 0; i < x.size(); ++i)
        count += x[i] != 0.0;
    return count;
}

double restricted_sup_norm(const Vector &grad, const Vector &x) {
    double best = 0.0;
    for (Index i = 0; i < x.size(); ++i)
        if (x[i] != 0.0)
            best = std::max(best, std::abs(grad[i]));
    return best;
}

} // namespace l0box
