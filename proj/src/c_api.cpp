// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/l0box.h"

#include "l0box/bench.hpp"
#include "l0box/oracle.hpp"
#include "l0box/problem.hpp"
#include "l0box/solvers.hpp"
#include "l0box/trace.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

struct l0box_problem {
    l0box::Problem problem;
};

struct l0box_result {
    l0box::SolveResult result;
    std::string solver_name;
    double lambda = 0.0;
    bool sequence_proxy = false;
};

namespace {

thread_local std::string g_last_error;

l0box_status fail(l0box_status s, const std::string &msg) {
    g_last_error = msg;
    return s;
}

// Maps the library's exception types onto status codes.
template <class Fn> l0box_status guarded(Fn &&fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const l0box::ContractViolation &e) {
        return fail(L0BOX_ERR_CONTRACT, e.what());
    } catch (const l0box::SolverAborted &e) {
        return fail(L0BOX_ERR_NUMERIC, e.what());
    } catch (const l0box::SpectralNormError &e) {
        return fail(L0BOX_ERR_NUMERIC, e.what());
    } catch (const l0box::TraceFormatError &e) {
        return fail(L0BOX_ERR_FORMAT, e.what());
    } catch (const std::filesystem::filesystem_error &e) {
        return fail(L0BOX_ERR_IO, e.what());
    } catch (const std::bad_alloc &) {
        return fail(L0BOX_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(L0BOX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(L0BOX_ERR_INTERNAL, "unknown exception");
    }
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bool valid_example(int e) { return e >= L0BOX_EXAMPLE_41 && e <= L0BOX_EXAMPLE_43; }
bool valid_algorithm(int a) { return a >= L0BOX_SFIHT && a <= L0BOX_IHT; }

l0box::ExampleId to_cpp(l0box_example e) { return static_cast<l0box::ExampleId>(e); }
l0box::SolverKind to_cpp(l0box_algorithm a) { return static_cast<l0box::SolverKind>(a); }
l0box::BetaPreset to_cpp(l0box_beta_preset p) { return static_cast<l0box::BetaPreset>(p); }

l0box::BetaStrategy to_cpp(l0box_beta_strategy s) {
    switch (s) {
    case L0BOX_BETA_GENERIC:
        return l0box::BetaStrategy::GenericCap;
    case L0BOX_BETA_SEQCONV:
        return l0box::BetaStrategy::SequenceConvergent;
    case L0BOX_BETA_FISTA:
        return l0box::BetaStrategy::FistaLike;
    case L0BOX_BETA_ZERO:
        return l0box::BetaStrategy::Zero;
    }
    throw l0box::ContractViolation("unknown beta strategy");
}

l0box_experiment_spec to_c(const l0box::ExperimentSpec &s) {
    l0box_experiment_spec c{};
    c.example = static_cast<l0box_example>(s.example);
    c.m = s.m;
    c.n = s.n;
    c.s = s.s;
    c.noise_scale = s.noise_scale;
    c.seed = s.seed;
    c.lambda = s.lambda;
    c.epsilon = s.epsilon;
    c.sigma = s.sigma;
    c.mu0 = s.mu0;
    c.alpha = s.alpha;
    c.max_iter = s.max_iter;
    c.L = s.L ? *s.L : 0.0;
    c.solver = static_cast<l0box_algorithm>(s.solver);
    c.beta_preset = static_cast<l0box_beta_preset>(s.beta_preset);
    c.run_baseline = s.run_baseline ? 1 : 0;
    return c;
}

l0box::ExperimentSpec to_cpp(const l0box_experiment_spec &c) {
    if (!valid_example(c.example) || !valid_algorithm(c.solver) || c.beta_preset < L0BOX_PRESET_GENERIC ||
        c.beta_preset > L0BOX_PRESET_DEFAULT)
        throw l0box::ContractViolation("experiment spec: enum field out of range");
    l0box::ExperimentSpec s;
    s.example = to_cpp(c.example);
    s.m = c.m;
    s.n = c.n;
    s.s = c.s;
    s.noise_scale = c.noise_scale;
    s.seed = c.seed;
    s.lambda = c.lambda;
    s.epsilon = c.epsilon;
    s.sigma = c.sigma;
    s.mu0 = c.mu0;
    s.alpha = c.alpha;
    s.max_iter = c.max_iter;
    if (c.L > 0.0)
        s.L = c.L;
    s.solver = to_cpp(c.solver);
    s.beta_preset = to_cpp(c.beta_preset);
    s.run_baseline = c.run_baseline != 0;
    l0box::validate(s);
    return s;
}

} // namespace

extern "C" {

const char *l0box_version(void) { return "1.0.0"; }

const char *l0box_status_string(l0box_status status) {
    switch (status) {
    case L0BOX_OK:
        return "ok";
    case L0BOX_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case L0BOX_ERR_CONTRACT:
        return "contract violation";
    case L0BOX_ERR_NUMERIC:
        return "numerical failure";
    case L0BOX_ERR_IO:
        return "i/o error";
    case L0BOX_ERR_FORMAT:
        return "format error";
    case L0BOX_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *l0box_last_error(void) { return g_last_error.c_str(); }

void l0box_string_free(char *s) { std::free(s); }

l0box_status l0box_problem_create(l0box_loss loss, const double *A, size_t m, size_t n, const double *b,
                                  const double *lower, const double *upper, double lambda, l0box_problem **out) {
    if (!out || !A || !b || m == 0 || n == 0)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "problem_create: null pointer or empty dimension");
    *out = nullptr;
    return guarded([&] {
        const auto M = static_cast<l0box::Index>(m);
        const auto N = static_cast<l0box::Index>(n);
        l0box::Matrix Am = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(A, M, N);
        l0box::Vector bv = Eigen::Map<const l0box::Vector>(b, M);
        const double inf = std::numeric_limits<double>::infinity();
        l0box::Vector lo = lower ? l0box::Vector(Eigen::Map<const l0box::Vector>(lower, N)) : l0box::Vector::Constant(N, -inf);
        l0box::Vector hi = upper ? l0box::Vector(Eigen::Map<const l0box::Vector>(upper, N)) : l0box::Vector::Constant(N, inf);
        l0box::BoxSet box(std::move(lo), std::move(hi));
        switch (loss) {
        case L0BOX_LOSS_L1:
            *out = new l0box_problem{l0box::Problem(l0box::l1_regression_loss(std::move(Am), std::move(bv)), box, lambda)};
            break;
        case L0BOX_LOSS_CENSORED:
            *out = new l0box_problem{
                l0box::Problem(l0box::censored_regression_loss(std::move(Am), std::move(bv)), box, lambda)};
            break;
        case L0BOX_LOSS_LEAST_SQUARES:
            *out = new l0box_problem{l0box::Problem(l0box::least_squares_loss(std::move(Am), std::move(bv)), box, lambda)};
            break;
        default:
            return fail(L0BOX_ERR_INVALID_ARGUMENT, "problem_create: unknown loss");
        }
        return L0BOX_OK;
    });
}

void l0box_problem_destroy(l0box_problem *problem) { delete problem; }

size_t l0box_problem_dim(const l0box_problem *problem) {
    return problem ? static_cast<size_t>(problem->problem.dim()) : 0;
}

l0box_status l0box_problem_objective(const l0box_problem *problem, const double *x, size_t n, double *f_value,
                                     double *F_value, size_t *card) {
    if (!problem || !x)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "problem_objective: null pointer");
    if (n != static_cast<size_t>(problem->problem.dim()))
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "problem_objective: length does not match the problem dimension");
    return guarded([&] {
        const l0box::Vector xv = Eigen::Map<const l0box::Vector>(x, static_cast<l0box::Index>(n));
        const auto v = l0box::objective(problem->problem, xv);
        if (f_value)
            *f_value = v.f_value;
        if (F_value)
            *F_value = v.F_value;
        if (card)
            *card = static_cast<size_t>(v.card);
        return L0BOX_OK;
    });
}

l0box_status l0box_solver_options_default(l0box_algorithm algorithm, l0box_solver_options *out) {
    if (!out || !valid_algorithm(algorithm))
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "solver_options_default: bad argument");
    *out = l0box_solver_options{};
    out->algorithm = algorithm;
    out->x0 = nullptr;
    out->audit_subproblem = 0;
    if (algorithm == L0BOX_SFIHT || algorithm == L0BOX_SIHT) {
        const l0box::SfihtConfig c;
        out->mu0 = c.mu0;
        out->sigma = c.sigma;
        out->alpha = c.alpha;
        out->epsilon = c.epsilon;
        out->max_iter = c.max_iter;
        out->beta_strategy = algorithm == L0BOX_SIHT ? L0BOX_BETA_ZERO : L0BOX_BETA_SEQCONV;
        out->fallback = L0BOX_FALLBACK_SCALED;
    } else {
        const l0box::FihtConfig c;
        out->mu0 = 1.0;
        out->sigma = 0.0;
        out->alpha = c.alpha;
        out->epsilon = c.epsilon;
        out->max_iter = c.max_iter;
        out->beta_strategy = L0BOX_BETA_FISTA;
        out->fallback = L0BOX_FALLBACK_SCALED;
    }
    return L0BOX_OK;
}

l0box_status l0box_solve(const l0box_problem *problem, const l0box_solver_options *options, l0box_result **out) {
    if (!problem || !options || !out)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "solve: null pointer");
    if (!valid_algorithm(options->algorithm))
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "solve: unknown algorithm");
    *out = nullptr;
    return guarded([&] {
        const auto &p = problem->problem;
        const bool smoothing = options->algorithm == L0BOX_SFIHT || options->algorithm == L0BOX_SIHT;
        if (smoothing == p.is_smooth())
            return fail(L0BOX_ERR_CONTRACT, smoothing ? "solve: smoothing algorithms need a nonsmooth loss"
                                                      : "solve: FIHT/IHT need a smooth loss");
        std::optional<l0box::Vector> x0;
        if (options->x0)
            x0 = l0box::Vector(Eigen::Map<const l0box::Vector>(options->x0, p.dim()));
        std::optional<double> L;
        if (options->L > 0.0)
            L = options->L;

        auto res = std::make_unique<l0box_result>();
        res->lambda = p.lambda();
        if (smoothing) {
            l0box::SfihtConfig c;
            c.L = L;
            c.mu0 = options->mu0;
            c.sigma = options->sigma;
            c.alpha = options->alpha;
            c.beta_strategy = to_cpp(options->beta_strategy);
            c.epsilon = options->epsilon;
            c.max_iter = options->max_iter;
            c.x0 = x0;
            c.audit_subproblem = options->audit_subproblem != 0;
            res->sequence_proxy = c.beta_strategy == l0box::BetaStrategy::SequenceConvergent;
            if (options->algorithm == L0BOX_SIHT) {
                res->result = l0box::siht_solve(p, c);
                res->solver_name = "siht";
                res->sequence_proxy = false;
            } else {
                res->result = l0box::sfiht_solve(p, c);
                res->solver_name = "sfiht";
            }
        } else {
            l0box::FihtConfig c;
            c.L = L;
            c.alpha = options->alpha;
            c.fallback = options->fallback == L0BOX_FALLBACK_CAP ? l0box::FihtFallback::CapEndpoint
                                                                 : l0box::FihtFallback::PaperScaled;
            c.epsilon = options->epsilon;
            c.max_iter = options->max_iter;
            c.x0 = x0;
            c.audit_subproblem = options->audit_subproblem != 0;
            if (options->algorithm == L0BOX_IHT) {
                res->result = l0box::iht_solve(p, c);
                res->solver_name = "iht";
            } else {
                res->result = l0box::fiht_solve(p, c);
                res->solver_name = "fiht";
            }
        }
        *out = res.release();
        return L0BOX_OK;
    });
}

void l0box_result_destroy(l0box_result *result) { delete result; }

int64_t l0box_result_iterations(const l0box_result *result) { return result ? result->result.iterations : -1; }

int l0box_result_converged(const l0box_result *result) {
    return result && result->result.status == l0box::SolveStatus::Converged ? 1 : 0;
}

size_t l0box_result_dim(const l0box_result *result) {
    return result ? static_cast<size_t>(result->result.x_final.size()) : 0;
}

l0box_status l0box_result_x(const l0box_result *result, double *x, size_t n) {
    if (!result || !x)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "result_x: null pointer");
    if (n != static_cast<size_t>(result->result.x_final.size()))
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "result_x: buffer length does not match");
    std::memcpy(x, result->result.x_final.data(), n * sizeof(double));
    return L0BOX_OK;
}

size_t l0box_result_trace_length(const l0box_result *result) { return result ? result->result.trace.size() : 0; }

int64_t l0box_result_support_changes(const l0box_result *result) {
    return result ? result->result.support_change_count : -1;
}

int64_t l0box_result_audit_violations(const l0box_result *result) {
    return result ? result->result.audit.total() : -1;
}

l0box_status l0box_result_write_trace(const l0box_result *result, const char *csv_path) {
    if (!result || !csv_path)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "result_write_trace: null pointer");
    return guarded([&] {
        const std::filesystem::path path(csv_path);
        std::ofstream os(path);
        if (!os)
            return fail(L0BOX_ERR_IO, "cannot write " + path.string());
        l0box::write_trace_csv(os, result->result.trace);
        std::filesystem::path meta_path = path;
        meta_path.replace_extension(".meta.json");
        std::ofstream ms(meta_path);
        if (!ms)
            return fail(L0BOX_ERR_IO, "cannot write " + meta_path.string());
        ms << l0box::trace_meta_json(
                  l0box::make_trace_meta(result->solver_name, result->result, result->lambda, result->sequence_proxy))
           << '\n';
        if (!os || !ms)
            return fail(L0BOX_ERR_IO, "write failed for " + path.string());
        return L0BOX_OK;
    });
}

l0box_status l0box_experiment_spec_default(l0box_example example, int full_scale, l0box_experiment_spec *out) {
    if (!out || !valid_example(example))
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "experiment_spec_default: bad argument");
    *out = to_c(l0box::default_spec(to_cpp(example), full_scale != 0));
    return L0BOX_OK;
}

l0box_status l0box_parse_example(const char *text, l0box_example *out) {
    if (!text || !out)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "parse_example: null pointer");
    return guarded([&] {
        *out = static_cast<l0box_example>(l0box::parse_example(text));
        return L0BOX_OK;
    });
}

l0box_status l0box_parse_algorithm(const char *text, l0box_algorithm *out) {
    if (!text || !out)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "parse_algorithm: null pointer");
    return guarded([&] {
        *out = static_cast<l0box_algorithm>(l0box::parse_solver(text));
        return L0BOX_OK;
    });
}

l0box_status l0box_parse_beta_preset(const char *text, l0box_beta_preset *out) {
    if (!text || !out)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "parse_beta_preset: null pointer");
    return guarded([&] {
        *out = static_cast<l0box_beta_preset>(l0box::parse_beta_preset(text));
        return L0BOX_OK;
    });
}

l0box_status l0box_run_experiment(const l0box_experiment_spec *spec, const char *out_dir, char **summary_json) {
    if (!spec)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "run_experiment: null spec");
    return guarded([&] {
        std::optional<std::filesystem::path> dir;
        if (out_dir)
            dir = std::filesystem::path(out_dir);
        const auto report = l0box::run_experiment(to_cpp(*spec), dir);
        if (summary_json)
            *summary_json = dup_string(l0box::summary_json(report));
        return L0BOX_OK;
    });
}

l0box_status l0box_table(const l0box_experiment_spec *spec, const double *epsilons, size_t count, char **markdown) {
    if (!spec || !epsilons || count == 0 || !markdown)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "table: null pointer or no epsilons");
    return guarded([&] {
        const l0box::ExperimentSpec base = to_cpp(*spec);
        std::vector<l0box::TableColumn> cols;
        for (size_t i = 0; i < count; ++i) {
            l0box::ExperimentSpec s = base;
            s.epsilon = epsilons[i];
            l0box::validate(s);
            cols.push_back({epsilons[i], l0box::run_experiment(s).runs});
        }
        std::ostringstream caption;
        caption << "Example " << l0box::to_string(base.example) << ", m=" << base.m << ", n=" << base.n
                << ", s=" << base.s << ", lambda=" << base.lambda << ", seed=" << base.seed;
        *markdown = dup_string(l0box::markdown_table(caption.str(), cols));
        return L0BOX_OK;
    });
}

l0box_status l0box_oracle_report(l0box_example example, int64_t n, uint64_t seed, double lambda,
                                 int64_t restricted_max_iter, char **report_json) {
    if (!report_json || !valid_example(example))
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "oracle_report: bad argument");
    return guarded([&] {
        const auto spec = l0box::tiny_spec(to_cpp(example), n, seed, lambda);
        l0box::RestrictedOptions opts;
        if (restricted_max_iter > 0)
            opts.max_iter = restricted_max_iter;
        *report_json = dup_string(l0box::oracle_report_json(spec, opts));
        return L0BOX_OK;
    });
}

l0box_status l0box_audit_trace_file(const char *csv_path, int *clean, char **report) {
    if (!csv_path || !clean)
        return fail(L0BOX_ERR_INVALID_ARGUMENT, "audit_trace_file: null pointer");
    return guarded([&] {
        if (!std::filesystem::exists(csv_path))
            return fail(L0BOX_ERR_IO, std::string("no such file: ") + csv_path);
        const auto audit = l0box::audit_trace_file(csv_path);
        *clean = audit.clean() ? 1 : 0;
        if (report) {
            std::ostringstream os;
            os << (audit.used_meta ? "full audit (metadata found)" : "structural audit (no metadata)") << '\n';
            os << audit.summary.describe();
            for (const auto &p : audit.problems)
                os << "problem: " << p << '\n';
            os << (audit.clean() ? "clean" : "violations found") << '\n';
            *report = dup_string(os.str());
        }
        return L0BOX_OK;
    });
}

} // extern "C"
