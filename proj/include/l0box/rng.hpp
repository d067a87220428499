// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace l0box {

/// Seeded generator used for all instance data. The derivations below are
/// part of the output format: changing any of them bumps kRngVersion.
///   uniform01: ((u >> 11) + 0.5) * 2^-53, never 0 or 1
///   normal:    -sqrt(2) * erfc_inv(2 * uniform01)
///   permutation: Fisher-Yates from the back, index = floor(uniform01 * (i + 1))
class Rng {
  public:
    static constexpr const char *kGenerator = "mt19937_64";
    static constexpr const char *kNormalMethod = "inverse-cdf (erfc_inv)";
    static constexpr int kRngVersion = 1;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double normal();
    /// Random permutation of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n);

  private:
    std::mt19937_64 engine_;
};

} // namespace l0box
