// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0
//
// Benchmark driver. Talks to the solver library only through l0box.h.

#include "l0box/l0box.h"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Values given on the command line or in the config file; unset ones keep
// the example's defaults.
struct RunArgs {
    std::string example = "41";
    std::optional<long long> m, n, s, max_iter;
    std::optional<unsigned long long> seed;
    std::optional<double> lambda, epsilon, sigma, mu0, alpha, L, noise;
    std::optional<std::string> solver, beta_preset;
    std::string out;
    bool full_scale = false;
    bool no_baselines = false;
    std::vector<double> epsilons;
};

int report_error(l0box_status st, const char *what) {
    std::cerr << "l0box " << what << ": " << l0box_status_string(st) << ": " << l0box_last_error() << "\n";
    return st == L0BOX_ERR_INVALID_ARGUMENT || st == L0BOX_ERR_CONTRACT ? 2 : 1;
}

void add_spec_options(CLI::App *cmd, RunArgs &a) {
    cmd->add_option("--example", a.example, "41, 42 or 43")->check(CLI::IsMember({"41", "42", "43"}));
    cmd->add_option("--m", a.m, "rows of the design");
    cmd->add_option("--n", a.n, "dimension");
    cmd->add_option("--s", a.s, "planted sparsity");
    cmd->add_option("--seed", a.seed, "RNG seed");
    cmd->add_option("--lambda", a.lambda, "l0 penalty weight");
    cmd->add_option("--sigma", a.sigma, "smoothing decay exponent");
    cmd->add_option("--mu0", a.mu0, "initial smoothing parameter");
    cmd->add_option("--alpha", a.alpha, "extrapolation parameter");
    cmd->add_option("--L", a.L, "step constant (default twice the Lipschitz constant)");
    cmd->add_option("--noise", a.noise, "noise scale");
    cmd->add_option("--max-iter", a.max_iter, "iteration cap");
    cmd->add_option("--solver", a.solver, "sfiht, siht, fiht or iht");
    cmd->add_option("--beta-preset", a.beta_preset, "generic, seqconv, fista or paper-default");
    cmd->add_flag("--full-scale", a.full_scale, "use the larger published problem sizes");
    cmd->add_flag("--no-baselines", a.no_baselines, "skip the beta = 0 counterpart");
}

l0box_status build_spec(const RunArgs &a, l0box_experiment_spec &spec) {
    l0box_example ex;
    if (auto st = l0box_parse_example(a.example.c_str(), &ex); st != L0BOX_OK)
        return st;
    if (auto st = l0box_experiment_spec_default(ex, a.full_scale ? 1 : 0, &spec); st != L0BOX_OK)
        return st;
    if (a.m)
        spec.m = *a.m;
    if (a.n)
        spec.n = *a.n;
    if (a.s)
        spec.s = *a.s;
    if (a.seed)
        spec.seed = *a.seed;
    if (a.lambda)
        spec.lambda = *a.lambda;
    if (a.epsilon)
        spec.epsilon = *a.epsilon;
    if (a.sigma)
        spec.sigma = *a.sigma;
    if (a.mu0)
        spec.mu0 = *a.mu0;
    if (a.alpha)
        spec.alpha = *a.alpha;
    if (a.L)
        spec.L = *a.L;
    if (a.noise)
        spec.noise_scale = *a.noise;
    if (a.max_iter)
        spec.max_iter = *a.max_iter;
    if (a.solver)
        if (auto st = l0box_parse_algorithm(a.solver->c_str(), &spec.solver); st != L0BOX_OK)
            return st;
    if (a.beta_preset)
        if (auto st = l0box_parse_beta_preset(a.beta_preset->c_str(), &spec.beta_preset); st != L0BOX_OK)
            return st;
    if (a.no_baselines)
        spec.run_baseline = 0;
    return L0BOX_OK;
}

int cmd_run(const RunArgs &a) {
    l0box_experiment_spec spec;
    if (auto st = build_spec(a, spec); st != L0BOX_OK)
        return report_error(st, "run");
    char *json = nullptr;
    if (auto st = l0box_run_experiment(&spec, a.out.empty() ? nullptr : a.out.c_str(), &json); st != L0BOX_OK)
        return report_error(st, "run");
    std::cout << json << "\n";
    l0box_string_free(json);
    return 0;
}

int cmd_table(const RunArgs &a) {
    l0box_experiment_spec spec;
    if (auto st = build_spec(a, spec); st != L0BOX_OK)
        return report_error(st, "table");
    std::vector<double> eps = a.epsilons;
    if (eps.empty())
        eps = {spec.epsilon};
    char *md = nullptr;
    if (auto st = l0box_table(&spec, eps.data(), eps.size(), &md); st != L0BOX_OK)
        return report_error(st, "table");
    std::cout << md;
    l0box_string_free(md);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Box-constrained l0-penalized regression: solvers and benchmarks"};
    app.set_version_flag("--version", std::string(l0box_version()));
    app.set_config("--config", "", "TOML file with option values; command-line flags win");
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "generate an instance, run a solver and its baseline");
    add_spec_options(run, run_args);
    run->add_option("--epsilon", run_args.epsilon, "stopping tolerance");
    run->add_option("--out", run_args.out, "directory for traces, summary.json and table.md");

    RunArgs table_args;
    auto *table = app.add_subcommand("table", "iterations and time per tolerance as a markdown table");
    add_spec_options(table, table_args);
    table->add_option("--epsilon", table_args.epsilons, "tolerances, one column each")->expected(1, -1);

    std::string oracle_example = "41";
    long long oracle_dim = 6;
    unsigned long long oracle_seed = 1;
    double oracle_lambda = 0.01;
    long long oracle_iters = 0;
    auto *oracle = app.add_subcommand("oracle", "enumerate every support of a tiny instance");
    oracle->add_option("--dim", oracle_dim, "dimension, at most 12")->check(CLI::Range(2LL, 12LL));
    oracle->add_option("--seed", oracle_seed, "RNG seed");
    oracle->add_option("--lambda", oracle_lambda, "l0 penalty weight");
    oracle->add_option("--example", oracle_example, "41, 42 or 43")->check(CLI::IsMember({"41", "42", "43"}));
    oracle->add_option("--restricted-max-iter", oracle_iters, "iteration budget of each restricted solve");

    std::string trace_path;
    auto *audit = app.add_subcommand("audit", "replay the energy checks on a trace CSV");
    audit->add_option("trace", trace_path, "trace CSV (reads TRACE.meta.json when present)")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(run_args);
    if (table->parsed())
        return cmd_table(table_args);
    if (oracle->parsed()) {
        l0box_example ex;
        if (auto st = l0box_parse_example(oracle_example.c_str(), &ex); st != L0BOX_OK)
            return report_error(st, "oracle");
        char *json = nullptr;
        if (auto st = l0box_oracle_report(ex, oracle_dim, oracle_seed, oracle_lambda, oracle_iters, &json);
            st != L0BOX_OK)
            return report_error(st, "oracle");
        std::cout << json << "\n";
        l0box_string_free(json);
        return 0;
    }
    if (audit->parsed()) {
        int clean = 0;
        char *text = nullptr;
        if (auto st = l0box_audit_trace_file(trace_path.c_str(), &clean, &text); st != L0BOX_OK)
            return report_error(st, "audit");
        std::cout << text;
        l0box_string_free(text);
        return clean ? 0 : 1;
    }
    return 2;
}
