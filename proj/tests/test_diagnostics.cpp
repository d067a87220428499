// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "doctest.h"
#include "helpers.hpp"

#include "l0box/diagnostics.hpp"

#include <limits>

using namespace l0box;
using testutil::vec;

TEST_CASE("tau weights") {
    CHECK(compute_tau(SupportBranch::ThreeEqual, 2.0, 1.0, 0.5, 0.4, 0.0) == doctest::Approx(2.0 / (4 * 0.5)));
    for (double beta : {0.0, 0.3, 0.9})
        CHECK(compute_tau(SupportBranch::Otherwise, 2.0, 1.0, 0.5, 0.4, beta) == doctest::Approx(1.0 / (8 * 0.5)));
    CHECK(compute_tau(SupportBranch::ThreeEqual, 2.0, 1.0, 0.5, 0.5, 0.5) == doctest::Approx(1.25));
}

TEST_CASE("zeta weights") {
    CHECK(compute_zeta(SupportBranch::ThreeEqual, 2.0, 1.0, 0.5) == doctest::Approx(0.5 * 1.25));
    CHECK(compute_zeta(SupportBranch::Otherwise, 2.0, 1.0, 0.5) == doctest::Approx(1.0 / 8));
}

TEST_CASE("lower bound delta") {
    const double inf = std::numeric_limits<double>::infinity();
    auto d = compute_delta(BoxSet::uniform(3, -1, 1), 0.5, 1.0);
    CHECK(d.delta == doctest::Approx(1.0));
    CHECK(d.per_coordinate == Vector::Ones(3));
    d = compute_delta(BoxSet::uniform(2, 0, 5), 2.0, 4.0);
    CHECK(d.delta == doctest::Approx(1.0));
    d = compute_delta(BoxSet::unbounded(4), 0.3, 2.0);
    CHECK(d.delta == doctest::Approx(std::sqrt(0.3)));
    d = compute_delta(BoxSet(vec({-0.2, 0}), vec({inf, 0.1})), 1.0, 1.0);
    CHECK(d.per_coordinate[0] == doctest::Approx(0.2));
    CHECK(d.per_coordinate[1] == doctest::Approx(0.1));
    CHECK(d.delta == doctest::Approx(0.1));
}

TEST_CASE("nu and constants") {
    CHECK(compute_nu(BoxSet::uniform(2, -1, 1), 0.01, 2.0, 0.7) == doctest::Approx(0.01));
    CHECK(compute_nu(BoxSet::uniform(2, -0.1, 1), 1.0, 2.0, 0.5) == doctest::Approx(0.02));
    const auto c = smoothed_constants(BoxSet::uniform(2, -1, 1), 0.01, 2.0, 1.0, 0.5, 0.7);
    CHECK(c.gamma == doctest::Approx(std::min(2.0 / 4, 1.0 / 8)));
    CHECK(c.nu > 0.0);
    const auto w = smooth_constants(BoxSet::uniform(2, 0, 5), 0.01, 2.0, 1.0);
    CHECK(w.nu == doctest::Approx(w.delta * w.delta));
}

TEST_CASE("stationary iterates: only kappa mu moves the energy") {
    TheoryConstants c = smoothed_constants(BoxSet::uniform(2, -1, 1), 0.01, 2.0, 1.0, 0.5, 0.7);
    EnergyMonitor mon(EnergyKind::H, c);
    for (Index k = 1; k <= 5; ++k) {
        IterateBundle b;
        b.k = k;
        b.mu_prev = 0.7 / std::pow(static_cast<double>(std::max<Index>(k, 1)), 0.9);
        b.mu_cur = 0.7 / std::pow(static_cast<double>(k + 1), 0.9);
        b.objective_value = 3.0;
        const auto rep = mon.audit_descent(b);
        CHECK(rep.violations.empty());
        if (k > 1)
            CHECK(rep.decrement == doctest::Approx(0.5 * (b.mu_cur - b.mu_prev)));
        CHECK(rep.energy == doctest::Approx(3.0 + 0.5 * b.mu_cur));
    }
    CHECK(mon.summary().total() == 0);
}

TEST_CASE("energy increase is reported, not thrown") {
    TheoryConstants c = smooth_constants(BoxSet::uniform(2, -1, 1), 0.01, 2.0, 1.0);
    EnergyMonitor mon(EnergyKind::W, c);
    IterateBundle b;
    b.objective_value = 1.0;
    (void)mon.audit_descent(b);
    b.k = 2;
    b.objective_value = 2.0;
    const auto rep = mon.audit_descent(b);
    CHECK_FALSE(rep.violations.empty());
    CHECK(mon.summary().count(ViolationKind::EnergyIncrease) == 1);
    CHECK(mon.summary().describe().find("energy_increase") != std::string::npos);
}

TEST_CASE("beta-tau inequality is checked") {
    TheoryConstants c = smoothed_constants(BoxSet::uniform(2, -1, 1), 0.01, 2.0, 1.0, 0.5, 0.7);
    EnergyMonitor mon(EnergyKind::H, c);
    IterateBundle b;
    b.objective_value = 1.0;
    (void)mon.audit_descent(b);
    // Support changes next with beta close to 1: (2L - Lf)/(2mu) beta^2 > tau.
    b.k = 2;
    b.beta = 0.99;
    b.next_support_equal = false;
    b.objective_value = 0.5;
    (void)mon.audit_descent(b);
    CHECK(mon.summary().count(ViolationKind::BetaWeight) == 1);
}

TEST_CASE("energy settles") {
    std::vector<double> e(300);
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = 1.0 + std::exp(-static_cast<double>(i));
    CHECK(energy_settled(e));
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = 1.0 / (1.0 + static_cast<double>(i));
    CHECK_FALSE(energy_settled(e));
}
