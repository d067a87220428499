// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "doctest.h"
#include "helpers.hpp"

#include "l0box/bench.hpp"
#include "l0box/rng.hpp"
#include "l0box/trace.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace l0box;

namespace {

std::vector<IterationRecord> synthetic(std::size_t n, double (*gap)(double)) {
    std::vector<IterationRecord> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i].k = static_cast<Index>(i) + 1;
        t[i].F = 1.0 + gap(static_cast<double>(i + 1));
    }
    return t;
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto d = std::filesystem::temp_directory_path() / ("l0box_test_" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("rng is deterministic and in range") {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform01();
        CHECK(u == b.uniform01());
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        differs |= u != c.uniform01();
    }
    CHECK(differs);
    auto p = Rng(7).permutation(10);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(p[i] == i);
}

TEST_CASE("rng normals have unit moments") {
    Rng r(9);
    double s = 0, s2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.01);
}

TEST_CASE("instance generation follows each recipe") {
    auto spec = default_spec(ExampleId::LinReg41);
    auto inst = generate_instance(spec);
    CHECK((inst.A * inst.A.transpose() - Matrix::Identity(spec.m, spec.m)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(spectral_norm(inst.A).value - 1.0) <= 1e-6);
    CHECK(l0_norm(inst.x_star) == spec.s);
    CHECK(inst.box.contains(inst.x_star));

    spec = default_spec(ExampleId::Censored42);
    inst = generate_instance(spec);
    CHECK(inst.b.minCoeff() >= 0.0);
    CHECK(l0_norm(inst.x_star) == spec.s);
    for (Index i = 0; i < inst.x_star.size(); ++i)
        if (inst.x_star[i] != 0.0) {
            CHECK(inst.x_star[i] >= 0.1);
            CHECK(inst.x_star[i] <= 1.0);
        }

    spec = default_spec(ExampleId::LeastSq43);
    inst = generate_instance(spec);
    CHECK(inst.box.contains(inst.x_star));
    CHECK(l0_norm(inst.x_star) <= spec.s);
}

TEST_CASE("instance generation is bitwise reproducible") {
    for (auto ex : {ExampleId::LinReg41, ExampleId::Censored42, ExampleId::LeastSq43}) {
        auto spec = default_spec(ex);
        spec.seed = 77;
        const auto a = generate_instance(spec), b = generate_instance(spec);
        CHECK(a.A == b.A);
        CHECK(a.b == b.b);
        CHECK(a.x_star == b.x_star);
        spec.seed = 78;
        CHECK_FALSE(generate_instance(spec).A == a.A);
    }
}

TEST_CASE("spec validation") {
    auto spec = default_spec(ExampleId::LinReg41);
    spec.s = spec.n + 1;
    CHECK_THROWS_AS(validate(spec), ContractViolation);
    spec = default_spec(ExampleId::LinReg41);
    spec.m = spec.n;
    CHECK_THROWS_AS(validate(spec), ContractViolation);
    spec = default_spec(ExampleId::Censored42);
    spec.m = spec.n - 1;
    CHECK_THROWS_AS(validate(spec), ContractViolation);
    spec = default_spec(ExampleId::LeastSq43);
    spec.solver = SolverKind::Sfiht;
    CHECK_THROWS_AS(validate(spec), ContractViolation);
    CHECK_THROWS_AS(parse_example("44"), ContractViolation);
    CHECK(parse_beta_preset("paper-default") == BetaPreset::PaperDefault);
    CHECK(parse_solver("iht") == SolverKind::Iht);
}

TEST_CASE("rate probe on synthetic sequences") {
    const auto geo = synthetic(400, [](double k) { return std::pow(2.0, -k); });
    auto r = rate_probe(geo, RateMode::SfihtRate, 0.7);
    CHECK(r.pass);
    r = rate_probe(geo, RateMode::FihtRate);
    CHECK(r.pass);
    CHECK(r.quarter_ratio < 1e-3);

    const auto poly = synthetic(400, [](double k) { return std::pow(k, -1.5); });
    r = rate_probe(poly, RateMode::SfihtRate, 0.7, 1.0);
    CHECK(r.pass);
    CHECK(r.slope == doctest::Approx(-1.5).epsilon(1e-6));

    const auto flat = synthetic(400, [](double) { return 0.25; });
    r = rate_probe(flat, RateMode::SfihtRate, 0.7, 1.0);
    CHECK_FALSE(r.pass);
    CHECK(std::abs(r.slope) < 1e-12);
    r = rate_probe(flat, RateMode::FihtRate, 1.0, 1.0);
    CHECK_FALSE(r.pass);

    CHECK_FALSE(rate_probe(synthetic(50, [](double) { return 0.0; }), RateMode::FihtRate).applicable);
}

TEST_CASE("trace csv round trip") {
    auto spec = default_spec(ExampleId::LinReg41);
    spec.m = 20;
    spec.n = 50;
    spec.s = 20;
    const Problem p = make_problem(generate_instance(spec), spec.example, spec.lambda);
    const auto r = run_solver(p, spec, SolverKind::Sfiht);
    std::stringstream ss;
    write_trace_csv(ss, r.trace);
    CHECK(ss.str().rfind(std::string(kTraceHeader) + "\n", 0) == 0);
    const auto back = read_trace_csv(ss);
    REQUIRE(back.size() == r.trace.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].k == r.trace[i].k);
        CHECK(back[i].regime == r.trace[i].regime);
        CHECK(back[i].beta == r.trace[i].beta);
        CHECK(back[i].mu == r.trace[i].mu);
        CHECK(back[i].F == r.trace[i].F);
        CHECK(back[i].energy == r.trace[i].energy);
    }
    CHECK(back.back().regime == Regime::Final);

    const auto meta = make_trace_meta("sfiht", r, spec.lambda, true);
    const auto audit = audit_trace(back, parse_trace_meta(trace_meta_json(meta)));
    CHECK(audit.used_meta);
    CHECK(audit.clean());
}

TEST_CASE("smooth-case traces leave mu empty") {
    auto spec = default_spec(ExampleId::LeastSq43);
    const Problem p = make_problem(generate_instance(spec), spec.example, spec.lambda);
    const auto r = run_solver(p, spec, SolverKind::Fiht);
    std::stringstream ss;
    write_trace_csv(ss, r.trace);
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    CHECK(row.find(",,") != std::string::npos);
    std::stringstream again(ss.str());
    const auto back = read_trace_csv(again);
    CHECK_FALSE(back.front().mu.has_value());
}

TEST_CASE("malformed traces are rejected") {
    std::stringstream bad_header("k,regime\n1,step1\n");
    CHECK_THROWS_AS(read_trace_csv(bad_header), TraceFormatError);
    std::stringstream bad_row(std::string(kTraceHeader) + "\n1,step1,0,0.7,3,x,1,1,1,0\n");
    CHECK_THROWS_AS(read_trace_csv(bad_row), TraceFormatError);
    std::stringstream bad_regime(std::string(kTraceHeader) + "\n1,warp,0,0.7,3,1,1,1,1,0\n");
    CHECK_THROWS_AS(read_trace_csv(bad_regime), TraceFormatError);
}

TEST_CASE("audit catches a tampered energy column") {
    auto spec = default_spec(ExampleId::LinReg41);
    spec.m = 20;
    spec.n = 50;
    spec.s = 20;
    const Problem p = make_problem(generate_instance(spec), spec.example, spec.lambda);
    const auto r = run_solver(p, spec, SolverKind::Sfiht);
    auto trace = r.trace;
    trace[10].energy += 1.0;
    CHECK_FALSE(audit_trace(trace, std::nullopt).clean());
    CHECK_FALSE(audit_trace(trace, make_trace_meta("sfiht", r, spec.lambda, true)).clean());

    trace = r.trace;
    trace[5].k = 99;
    CHECK_FALSE(audit_trace(trace, std::nullopt).clean());
}

TEST_CASE("experiment artifacts") {
    auto spec = default_spec(ExampleId::LeastSq43);
    spec.seed = 4;
    const auto dir = scratch_dir("artifacts");
    const auto report = run_experiment(spec, dir);
    REQUIRE(report.runs.size() == 2);
    for (const char *f : {"summary.json", "table.md", "trace_fiht.csv", "trace_fiht.meta.json", "trace_iht.csv",
                          "trace_iht.meta.json"})
        CHECK(std::filesystem::exists(dir / f));
    std::ifstream in(dir / "summary.json");
    const auto j = nlohmann::json::parse(in);
    CHECK(j["schema_version"] == 1);
    CHECK(j["rng"]["generator"] == "mt19937_64");
    CHECK(j["results"].size() == 2);
    CHECK(j["spec"]["example"] == "43");
    CHECK(audit_trace_file(dir / "trace_fiht.csv").clean());
    CHECK(audit_trace_file(dir / "trace_iht.csv").clean());
    std::filesystem::remove_all(dir);
}

TEST_CASE("markdown table shape") {
    auto spec = default_spec(ExampleId::LeastSq43);
    std::vector<TableColumn> cols;
    for (double eps : {1e-3, 1e-4}) {
        spec.epsilon = eps;
        cols.push_back({eps, run_experiment(spec).runs});
    }
    const std::string md = markdown_table("caption", cols);
    CHECK(md.find("| Algorithm | Metric | eps=1e-03 | eps=1e-04 |") != std::string::npos);
    CHECK(md.find("| FIHT | Iterations |") != std::string::npos);
    CHECK(md.find("| IHT | Time (s) |") != std::string::npos);
}

TEST_CASE("censored preset terminates and beats the baseline on F") {
    auto spec = default_spec(ExampleId::Censored42);
    const auto report = run_experiment(spec);
    REQUIRE(report.runs.size() == 2);
    const auto &sf = report.runs[0].result, &si = report.runs[1].result;
    CHECK(sf.status == SolveStatus::Converged);
    CHECK(sf.trace.back().F <= si.trace.back().F);
}
