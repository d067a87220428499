// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/bench.hpp"

#include "l0box/rng.hpp"
#include "l0box/smoothing.hpp"
#include "l0box/trace.hpp"

#include "json.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace l0box {

namespace {

using json = nlohmann::json;

bool is_smooth_example(ExampleId e) { return e == ExampleId::LeastSq43; }

bool is_smooth_solver(SolverKind k) { return k == SolverKind::Fiht || k == SolverKind::Iht; }

SolverKind baseline_of(SolverKind k) {
    switch (k) {
    case SolverKind::Sfiht: return SolverKind::Siht;
    case SolverKind::Fiht: return SolverKind::Iht;
    default: return k;
    }
}

// Rows of A orthonormal: A = Q^T from the thin QR of the n x m Gaussian G^T.
// Returns false when R has a (numerically) vanishing diagonal entry.
bool orthonormal_rows(const Matrix &G, Matrix &A) {
    const Eigen::MatrixXd Gt = G.transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Gt);
    const Eigen::MatrixXd R = qr.matrixQR().topRows(G.rows()).triangularView<Eigen::Upper>();
    const double scale = R.diagonal().cwiseAbs().maxCoeff();
    if (!(R.diagonal().cwiseAbs().minCoeff() > 1e-10 * scale))
        return false;
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(G.cols(), G.rows());
    A = Q.transpose();
    return true;
}

Matrix gaussian(Rng &rng, Index m, Index n) {
    Matrix G(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j)
            G(i, j) = rng.normal();
    return G;
}

BoxSet example_box(ExampleId e, Index n) {
    switch (e) {
    case ExampleId::LinReg41: return BoxSet::uniform(n, -1.0, 1.0);
    case ExampleId::Censored42: return BoxSet::uniform(n, 0.0, 1.0);
    case ExampleId::LeastSq43: return BoxSet::uniform(n, 0.0, 5.0);
    }
    throw ContractViolation("unknown example");
}

// Returns false on QR degeneracy.
bool try_generate(const ExperimentSpec &spec, std::uint64_t seed, GeneratedInstance &out) {
    Rng rng(seed);
    const Index m = spec.m;
    const Index n = spec.n;
    out.box = example_box(spec.example, n);
    out.x_star = Vector::Zero(n);

    if (spec.example == ExampleId::Censored42) {
        out.A = gaussian(rng, m, n);
        const auto perm = rng.permutation(static_cast<std::size_t>(n));
        for (Index j = 0; j < spec.s; ++j)
            out.x_star[static_cast<Index>(perm[static_cast<std::size_t>(j)])] = rng.uniform(0.1, 1.0);
        Vector noise(m);
        for (Index i = 0; i < m; ++i)
            noise[i] = rng.normal();
        out.b = (out.A * out.x_star + spec.noise_scale * noise).cwiseMax(0.0);
        return true;
    }

    const auto perm = rng.permutation(static_cast<std::size_t>(n));
    for (Index j = 0; j < spec.s; ++j)
        out.x_star[static_cast<Index>(perm[static_cast<std::size_t>(j)])] = rng.normal();
    out.x_star = out.box.project(out.x_star);
    if (!orthonormal_rows(gaussian(rng, m, n), out.A))
        return false;
    Vector noise(m);
    for (Index i = 0; i < m; ++i)
        noise[i] = rng.normal();
    out.b = out.A * out.x_star + spec.noise_scale * noise;
    return true;
}

std::string short_fmt(double v, const char *spec) {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string upper(std::string s) {
    for (auto &c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

const char *to_string(ExampleId e) {
    switch (e) {
    case ExampleId::LinReg41: return "41";
    case ExampleId::Censored42: return "42";
    case ExampleId::LeastSq43: return "43";
    }
    return "unknown";
}

const char *to_string(SolverKind s) {
    switch (s) {
    case SolverKind::Sfiht: return "sfiht";
    case SolverKind::Siht: return "siht";
    case SolverKind::Fiht: return "fiht";
    case SolverKind::Iht: return "iht";
    }
    return "unknown";
}

const char *to_string(BetaPreset p) {
    switch (p) {
    case BetaPreset::Generic: return "generic";
    case BetaPreset::SeqConv: return "seqconv";
    case BetaPreset::Fista: return "fista";
    case BetaPreset::PaperDefault: return "paper-default";
    }
    return "unknown";
}

ExampleId parse_example(const std::string &s) {
    if (s == "41")
        return ExampleId::LinReg41;
    if (s == "42")
        return ExampleId::Censored42;
    if (s == "43")
        return ExampleId::LeastSq43;
    throw ContractViolation("unknown example '" + s + "' (expected 41, 42 or 43)");
}

SolverKind parse_solver(const std::string &s) {
    for (SolverKind k : {SolverKind::Sfiht, SolverKind::Siht, SolverKind::Fiht, SolverKind::Iht})
        if (s == to_string(k))
            return k;
    throw ContractViolation("unknown solver '" + s + "'");
}

BetaPreset parse_beta_preset(const std::string &s) {
    for (BetaPreset p : {BetaPreset::Generic, BetaPreset::SeqConv, BetaPreset::Fista, BetaPreset::PaperDefault})
        if (s == to_string(p))
            return p;
    throw ContractViolation("unknown beta preset '" + s + "'");
}

ExperimentSpec default_spec(ExampleId example, bool full_scale) {
    ExperimentSpec spec;
    spec.example = example;
    switch (example) {
    case ExampleId::LinReg41:
        spec.m = full_scale ? 300 : 60;
        spec.n = full_scale ? 1000 : 200;
        spec.s = full_scale ? 400 : 80;
        spec.noise_scale = 0.005;
        spec.lambda = 0.01;
        spec.epsilon = 1e-3;
        spec.sigma = 0.95;
        spec.solver = SolverKind::Sfiht;
        break;
    case ExampleId::Censored42:
        spec.m = full_scale ? 1000 : 200;
        spec.n = full_scale ? 200 : 40;
        spec.s = full_scale ? 60 : 12;
        spec.noise_scale = 0.01;
        spec.lambda = 0.003;
        spec.epsilon = 1e-2;
        spec.sigma = 0.7;
        spec.solver = SolverKind::Sfiht;
        break;
    case ExampleId::LeastSq43:
        spec.m = full_scale ? 500 : 100;
        spec.n = full_scale ? 5000 : 300;
        spec.s = full_scale ? 1000 : 60;
        spec.noise_scale = 0.01;
        spec.lambda = 0.01;
        spec.epsilon = 1e-4;
        spec.sigma = 0.95; // unused by the smooth solver
        spec.solver = SolverKind::Fiht;
        break;
    }
    return spec;
}

void validate(const ExperimentSpec &spec) {
    if (spec.m < 1 || spec.n < 1 || spec.s < 0)
        throw ContractViolation("spec: m, n must be positive and s nonnegative");
    if (spec.s > spec.n)
        throw ContractViolation("spec: s must not exceed n");
    if (spec.example == ExampleId::Censored42 ? !(spec.m > spec.n) : !(spec.m < spec.n))
        throw ContractViolation(spec.example == ExampleId::Censored42 ? "spec: example 42 needs m > n"
                                                                      : "spec: examples 41 and 43 need m < n");
    if (!(spec.noise_scale >= 0.0) || !std::isfinite(spec.noise_scale))
        throw ContractViolation("spec: noise_scale must be finite and nonnegative");
    if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda))
        throw ContractViolation("spec: lambda must be finite and nonnegative");
    if (is_smooth_example(spec.example) != is_smooth_solver(spec.solver))
        throw ContractViolation(std::string("spec: solver ") + to_string(spec.solver) +
                                " does not fit example " + to_string(spec.example));
    if (is_smooth_solver(spec.solver) &&
        (spec.beta_preset == BetaPreset::SeqConv || spec.beta_preset == BetaPreset::Fista))
        throw ContractViolation("spec: the smooth solvers accept only the generic and paper-default presets");
}

GeneratedInstance generate_instance(const ExperimentSpec &spec) {
    validate(spec);
    GeneratedInstance out{Matrix(), Vector(), Vector(), BoxSet::uniform(1, -1.0, 1.0), spec.seed, 0};
    std::uint64_t seed = spec.seed;
    for (int bump = 0; bump < 16; ++bump, ++seed) {
        if (try_generate(spec, seed, out)) {
            out.seed_used = seed;
            out.seed_bumps = bump;
            return out;
        }
    }
    throw std::runtime_error("generate_instance: design matrix degenerate for 16 consecutive seeds");
}

Problem make_problem(const GeneratedInstance &instance, ExampleId example, double lambda) {
    switch (example) {
    case ExampleId::LinReg41:
        return Problem(l1_regression_loss(instance.A, instance.b), instance.box, lambda);
    case ExampleId::Censored42:
        return Problem(censored_regression_loss(instance.A, instance.b), instance.box, lambda);
    case ExampleId::LeastSq43:
        return Problem(least_squares_loss(instance.A, instance.b), instance.box, lambda);
    }
    throw ContractViolation("unknown example");
}

SfihtConfig sfiht_config(const ExperimentSpec &spec) {
    SfihtConfig c;
    c.L = spec.L;
    c.mu0 = spec.mu0;
    c.sigma = spec.sigma;
    c.alpha = spec.alpha;
    c.epsilon = spec.epsilon;
    c.max_iter = spec.max_iter;
    switch (spec.beta_preset) {
    case BetaPreset::Generic: c.beta_strategy = BetaStrategy::GenericCap; break;
    case BetaPreset::SeqConv: c.beta_strategy = BetaStrategy::SequenceConvergent; break;
    case BetaPreset::Fista: c.beta_strategy = BetaStrategy::FistaLike; break;
    case BetaPreset::PaperDefault:
        c.beta_strategy = spec.example == ExampleId::Censored42 ? BetaStrategy::FistaLike
                                                                : BetaStrategy::SequenceConvergent;
        break;
    }
    if (spec.example == ExampleId::Censored42)
        c.x0 = Vector::Constant(spec.n, 0.1);
    return c;
}

FihtConfig fiht_config(const ExperimentSpec &spec) {
    FihtConfig c;
    c.L = spec.L;
    c.alpha = spec.alpha;
    c.epsilon = spec.epsilon;
    c.max_iter = spec.max_iter;
    c.fallback = spec.beta_preset == BetaPreset::Generic ? FihtFallback::CapEndpoint : FihtFallback::PaperScaled;
    return c;
}

SolveResult run_solver(const Problem &problem, const ExperimentSpec &spec, SolverKind kind) {
    switch (kind) {
    case SolverKind::Sfiht: return sfiht_solve(problem, sfiht_config(spec));
    case SolverKind::Siht: return siht_solve(problem, sfiht_config(spec));
    case SolverKind::Fiht: return fiht_solve(problem, fiht_config(spec));
    case SolverKind::Iht: return iht_solve(problem, fiht_config(spec));
    }
    throw ContractViolation("unknown solver");
}

RateReport rate_probe(const std::vector<IterationRecord> &trace, RateMode mode, double sigma,
                      std::optional<double> F_inf, std::size_t min_length) {
    RateReport r;
    r.mode = mode;
    const std::size_t n = trace.size();
    if (n < min_length || n < 8) {
        r.note = "trace shorter than " + std::to_string(std::max<std::size_t>(min_length, 8)) + " rows";
        return r;
    }
    r.applicable = true;
    r.F_inf = F_inf.value_or(trace.back().F);
    const double floor = std::numeric_limits<double>::epsilon() * std::abs(r.F_inf) +
                         std::numeric_limits<double>::min();
    auto gap = [&](std::size_t i) { return std::max(trace[i].F - r.F_inf, 0.0); };

    if (mode == RateMode::SfihtRate) {
        r.threshold = -0.8 * sigma;
        std::vector<double> xs, ys;
        Index positive = 0;
        for (std::size_t i = n / 2; i < n; ++i) {
            const double g = gap(i);
            if (g > floor)
                ++positive;
            xs.push_back(std::log(static_cast<double>(trace[i].k)));
            ys.push_back(std::log(g + floor));
        }
        r.points = static_cast<Index>(xs.size());
        if (positive < 10) {
            r.beyond_measurement = true;
            r.pass = true;
            r.note = "converged beyond measurement";
            return r;
        }
        const double N = static_cast<double>(xs.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= N;
        my /= N;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        r.slope = sxy / sxx;
        double ssr = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - my - r.slope * (xs[i] - mx);
            ssr += e * e;
        }
        const double se = std::sqrt(ssr / (N - 2.0) / sxx);
        const boost::math::students_t dist(N - 2.0);
        const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
        r.slope_lo = r.slope - t * se;
        r.slope_hi = r.slope + t * se;
        r.pass = r.slope <= r.threshold;
        r.note = "F_inf approximated by the final F";
        return r;
    }

    r.threshold = 1.0;
    const std::size_t q3 = n / 2;
    const std::size_t q4 = (3 * n) / 4;
    for (std::size_t i = q3; i < n; ++i) {
        const double kd = static_cast<double>(trace[i].k);
        const double v = kd * kd * gap(i);
        if (i < q4)
            r.q3_max = std::max(r.q3_max, v);
        else
            r.q4_max = std::max(r.q4_max, v);
    }
    r.points = static_cast<Index>(n - q3);
    if (r.q3_max <= 0.0) {
        r.beyond_measurement = true;
        r.pass = true;
        r.note = "converged beyond measurement";
        return r;
    }
    r.quarter_ratio = r.q4_max / r.q3_max;
    r.pass = r.quarter_ratio < 1.0;
    r.note = "F_inf approximated by the final F";
    return r;
}

ExperimentReport run_experiment(const ExperimentSpec &spec, const std::optional<std::filesystem::path> &out_dir) {
    const GeneratedInstance instance = generate_instance(spec);
    const Problem problem = make_problem(instance, spec.example, spec.lambda);

    ExperimentReport report;
    report.spec = spec;
    report.seed_used = instance.seed_used;
    report.seed_bumps = instance.seed_bumps;
    report.planted_card = l0_norm(instance.x_star);

    std::vector<SolverKind> kinds{spec.solver};
    if (spec.run_baseline && baseline_of(spec.solver) != spec.solver)
        kinds.push_back(baseline_of(spec.solver));

    for (SolverKind kind : kinds) {
        SolverRun run;
        run.kind = kind;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            run.result = run_solver(problem, spec, kind);
        } catch (const SolverAborted &e) {
            run.error = e.what();
            run.result.trace = e.partial_trace();
        }
        run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.runs.push_back(std::move(run));
    }

    const SolverRun &primary = report.runs.front();
    if (primary.error.empty()) {
        const RateMode mode = is_smooth_solver(spec.solver) ? RateMode::FihtRate : RateMode::SfihtRate;
        report.rate = rate_probe(primary.result.trace, mode, spec.sigma);
    }
    if (out_dir)
        write_artifacts(report, *out_dir);
    return report;
}

std::string summary_json(const ExperimentReport &report) {
    const ExperimentSpec &s = report.spec;
    json j;
    j["schema_version"] = 1;
    json spec = {{"example", to_string(s.example)},
                 {"m", s.m},
                 {"n", s.n},
                 {"s", s.s},
                 {"noise_scale", s.noise_scale},
                 {"seed", s.seed},
                 {"lambda", s.lambda},
                 {"epsilon", s.epsilon},
                 {"sigma", s.sigma},
                 {"mu0", s.mu0},
                 {"alpha", s.alpha},
                 {"max_iter", s.max_iter},
                 {"solver", to_string(s.solver)},
                 {"beta_preset", to_string(s.beta_preset)},
                 {"run_baseline", s.run_baseline}};
    spec["L"] = s.L ? json(*s.L) : json(nullptr);
    j["spec"] = spec;
    j["rng"] = {{"generator", Rng::kGenerator},
                {"normal", Rng::kNormalMethod},
                {"uniform", "((u >> 11) + 0.5) * 2^-53"},
                {"version", Rng::kRngVersion},
                {"seed_used", report.seed_used},
                {"seed_bumps", report.seed_bumps}};
    j["instance"] = {{"planted_card", report.planted_card}};

    json results = json::array();
    for (const auto &run : report.runs) {
        const SolveResult &r = run.result;
        json e = {{"solver", to_string(run.kind)}, {"seconds", run.seconds}};
        if (!run.error.empty()) {
            e["status"] = "aborted";
            e["error"] = run.error;
            e["trace_rows"] = r.trace.size();
        } else {
            const IterationRecord &last = r.trace.back();
            e["status"] = to_string(r.status);
            e["iterations"] = r.iterations;
            e["final_card"] = last.card;
            e["final_f"] = last.f_exact;
            e["final_F"] = last.F;
            e["support_change_count"] = r.support_change_count;
            e["max_beta"] = r.max_beta;
            e["gradient_evaluations"] = r.gradient_evaluations;
            e["audit_violations"] = r.audit.total();
            e["L"] = r.constants.L;
            e["L_smooth"] = r.constants.L_smooth;
        }
        results.push_back(e);
    }
    j["results"] = results;

    if (report.rate) {
        const RateReport &p = *report.rate;
        j["rate_probe"] = {{"mode", p.mode == RateMode::SfihtRate ? "sfiht_rate" : "fiht_rate"},
                           {"applicable", p.applicable},
                           {"pass", p.pass},
                           {"beyond_measurement", p.beyond_measurement},
                           {"F_inf", p.F_inf},
                           {"slope", p.slope},
                           {"slope_band", {p.slope_lo, p.slope_hi}},
                           {"threshold", p.threshold},
                           {"q3_max", p.q3_max},
                           {"q4_max", p.q4_max},
                           {"quarter_ratio", p.quarter_ratio},
                           {"points", p.points},
                           {"note", p.note}};
    } else {
        j["rate_probe"] = nullptr;
    }
    return j.dump(2);
}

std::string markdown_table(const std::string &caption, const std::vector<TableColumn> &columns) {
    std::ostringstream os;
    if (!caption.empty())
        os << caption << "\n\n";
    os << "| Algorithm | Metric |";
    for (const auto &c : columns)
        os << " eps=" << short_fmt(c.epsilon, "%.0e") << " |";
    os << "\n|---|---|";
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << "---:|";
    os << "\n";

    std::vector<SolverKind> kinds;
    for (const auto &c : columns)
        for (const auto &r : c.runs)
            if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end())
                kinds.push_back(r.kind);

    for (SolverKind kind : kinds) {
        for (int metric = 0; metric < 2; ++metric) {
            os << "| " << upper(to_string(kind)) << " | " << (metric == 0 ? "Time (s)" : "Iterations") << " |";
            for (const auto &c : columns) {
                const SolverRun *found = nullptr;
                for (const auto &r : c.runs)
                    if (r.kind == kind)
                        found = &r;
                if (!found)
                    os << " - |";
                else if (!found->error.empty())
                    os << " aborted |";
                else if (metric == 0)
                    os << " " << short_fmt(found->seconds, "%.3f") << " |";
                else
                    os << " " << found->result.iterations
                       << (found->result.status == SolveStatus::IterationCap ? " (cap)" : "") << " |";
            }
            os << "\n";
        }
    }
    return os.str();
}

void write_artifacts(const ExperimentReport &report, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string &name) {
        std::ofstream f(dir / name);
        if (!f)
            throw std::runtime_error("cannot write " + (dir / name).string());
        return f;
    };
    for (const auto &run : report.runs) {
        const std::string stem = std::string("trace_") + to_string(run.kind);
        auto csv = open(stem + ".csv");
        write_trace_csv(csv, run.result.trace);
        if (run.error.empty()) {
            const bool proxy = run.kind == SolverKind::Sfiht &&
                               sfiht_config(report.spec).beta_strategy == BetaStrategy::SequenceConvergent;
            auto meta = open(stem + ".meta.json");
            meta << trace_meta_json(make_trace_meta(to_string(run.kind), run.result, report.spec.lambda, proxy))
                 << "\n";
        }
    }
    open("summary.json") << summary_json(report) << "\n";
    std::vector<TableColumn> cols{{report.spec.epsilon, report.runs}};
    open("table.md") << markdown_table("Example " + std::string(to_string(report.spec.example)) + ", m=" +
                                           std::to_string(report.spec.m) + ", n=" + std::to_string(report.spec.n) +
                                           ", s=" + std::to_string(report.spec.s),
                                       cols);
}

ExperimentSpec tiny_spec(ExampleId example, Index n, std::uint64_t seed, double lambda) {
    if (n < 2 || n > kOracleMaxDim)
        throw ContractViolation("tiny_spec: n must lie in [2, 12]");
    ExperimentSpec spec = default_spec(example);
    spec.n = n;
    spec.s = n / 2;
    spec.m = example == ExampleId::Censored42 ? 3 * n : std::max<Index>(1, n / 2);
    spec.seed = seed;
    spec.lambda = lambda;
    spec.run_baseline = false;
    if (example == ExampleId::LeastSq43) {
        spec.epsilon = 1e-9;
        spec.max_iter = 200000;
    } else {
        // sigma = 1 shrinks the step mu_k / L like 1/k and stalls short of the
        // restricted minimizer; 0.7 reaches mu_k <= 1e-4 near k = 3.1e5.
        spec.beta_preset = BetaPreset::SeqConv;
        spec.sigma = 0.7;
        spec.epsilon = 1e-4;
        spec.max_iter = 2000000;
    }
    return spec;
}

std::string oracle_report_json(const ExperimentSpec &tiny, const RestrictedOptions &options) {
    const GeneratedInstance instance = generate_instance(tiny);
    const Problem problem = make_problem(instance, tiny.example, tiny.lambda);
    const auto certs = enumerate_local_minimizers(problem, options);

    auto zeros_json = [](const SupportSet &s) { return json(s.zero_indices()); };
    auto vec_json = [](const Vector &v) { return json(std::vector<double>(v.data(), v.data() + v.size())); };

    json j;
    j["schema_version"] = 1;
    j["example"] = to_string(tiny.example);
    j["m"] = tiny.m;
    j["n"] = tiny.n;
    j["seed"] = tiny.seed;
    j["lambda"] = tiny.lambda;
    json list = json::array();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto &c = certs[i];
        list.push_back({{"zero_indices", zeros_json(c.support)},
                        {"restricted_minimizer", vec_json(c.restricted_minimizer)},
                        {"restricted_value", c.restricted_value},
                        {"F", c.F_value},
                        {"is_local_min_of_F", c.is_local_min_of_F},
                        {"precision_flag", c.precision_flag}});
        if (c.is_local_min_of_F && (!best || c.F_value < certs[*best].F_value))
            best = i;
    }
    j["certificates"] = list;
    j["best_local_min_index"] = best ? json(*best) : json(nullptr);

    const SolveResult r = run_solver(problem, tiny, tiny.solver);
    const SupportSet zs = support(r.x_final);
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < certs.size(); ++i)
        if (certs[i].support == zs)
            hit = i;
    const double F = objective(problem, r.x_final).F_value;
    j["solver"] = {{"name", to_string(tiny.solver)},
                   {"status", to_string(r.status)},
                   {"iterations", r.iterations},
                   {"x", vec_json(r.x_final)},
                   {"zero_indices", zeros_json(zs)},
                   {"F", F},
                   {"certificate_index", hit ? json(*hit) : json(nullptr)},
                   {"F_gap", hit ? json(std::abs(F - certs[*hit].F_value)) : json(nullptr)}};
    return j.dump(2);
}

} // namespace l0box
