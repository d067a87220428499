// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/core.hpp"

#include <initializer_list>
#include <random>

namespace testutil {

inline l0box::Vector vec(std::initializer_list<double> v) {
    l0box::Vector out(static_cast<l0box::Index>(v.size()));
    l0box::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

inline l0box::Matrix gaussian(l0box::Index m, l0box::Index n, std::mt19937_64 &gen) {
    std::normal_distribution<double> nd;
    l0box::Matrix A(m, n);
    for (l0box::Index i = 0; i < m; ++i)
        for (l0box::Index j = 0; j < n; ++j)
            A(i, j) = nd(gen);
    return A;
}

inline l0box::Vector gaussian(l0box::Index n, std::mt19937_64 &gen) {
    std::normal_distribution<double> nd;
    l0box::Vector v(n);
    for (l0box::Index i = 0; i < n; ++i)
        v[i] = nd(gen);
    return v;
}

inline double rel_err(const l0box::Vector &a, const l0box::Vector &b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

} // namespace testutil
