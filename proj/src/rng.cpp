// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numeric>

namespace l0box {

double Rng::uniform01() {
    const std::uint64_t u = engine_();
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * uniform01());
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = n; i-- > 1;) {
        auto j = static_cast<std::size_t>(uniform01() * static_cast<double>(i + 1));
        if (j > i)
            j = i;
        std::swap(p[i], p[j]);
    }
    return p;
}

} // namespace l0box
