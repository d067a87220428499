// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#include "l0box/trace.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace l0box {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double to_double(const std::string &s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw TraceFormatError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

Index to_index(const std::string &s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return static_cast<Index>(v);
    } catch (const std::exception &) {
        throw TraceFormatError("line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    }
}

} // namespace

Regime parse_regime(const std::string &s) {
    if (s == "step1")
        return Regime::Step1;
    if (s == "step3b")
        return Regime::Step3b;
    if (s == "step3b2")
        return Regime::Step3b2;
    if (s == "final")
        return Regime::Final;
    throw TraceFormatError("unknown regime '" + s + "'");
}

void write_trace_csv(std::ostream &os, const std::vector<IterationRecord> &trace) {
    os << kTraceHeader << '\n';
    for (const auto &r : trace) {
        os << r.k << ',' << to_string(r.regime) << ',' << fmt(r.beta) << ',' << (r.mu ? fmt(*r.mu) : "")
           << ',' << r.card << ',' << fmt(r.f_exact) << ',' << fmt(r.f_smooth) << ',' << fmt(r.F) << ','
           << fmt(r.energy) << ',' << fmt(r.step_norm) << '\n';
    }
}

std::vector<IterationRecord> read_trace_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line))
        throw TraceFormatError("empty trace");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kTraceHeader)
        throw TraceFormatError("unexpected header: " + line);

    std::vector<IterationRecord> out;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != 10)
            throw TraceFormatError("line " + std::to_string(line_no) + ": expected 10 fields");
        IterationRecord r;
        r.k = to_index(cells[0], line_no);
        r.regime = parse_regime(cells[1]);
        r.beta = to_double(cells[2], line_no);
        if (!cells[3].empty())
            r.mu = to_double(cells[3], line_no);
        r.card = to_index(cells[4], line_no);
        r.f_exact = to_double(cells[5], line_no);
        r.f_smooth = to_double(cells[6], line_no);
        r.F = to_double(cells[7], line_no);
        r.energy = to_double(cells[8], line_no);
        r.step_norm = to_double(cells[9], line_no);
        out.push_back(r);
    }
    return out;
}

TraceMeta make_trace_meta(const std::string &solver, const SolveResult &result, double lambda,
                          bool sequence_proxy) {
    TraceMeta meta;
    meta.solver = solver;
    meta.kind = result.trace.empty() || result.trace.front().mu ? EnergyKind::H : EnergyKind::W;
    meta.constants = result.constants;
    meta.lambda = lambda;
    meta.sequence_proxy = sequence_proxy;
    for (const auto &r : result.trace)
        if (r.support_changes_next)
            meta.support_change_k.push_back(r.k);
    return meta;
}

std::string trace_meta_json(const TraceMeta &meta) {
    const auto &c = meta.constants;
    json j;
    j["solver"] = meta.solver;
    j["energy"] = meta.kind == EnergyKind::H ? "H" : "W";
    j["lambda"] = meta.lambda;
    j["sequence_proxy"] = meta.sequence_proxy;
    j["constants"] = {{"L", c.L},         {"L_smooth", c.L_smooth}, {"kappa", c.kappa}, {"nu", c.nu},
                      {"gamma", c.gamma}, {"delta", c.delta},       {"mu0", c.mu0}};
    j["support_change_k"] = meta.support_change_k;
    return j.dump(2);
}

TraceMeta parse_trace_meta(const std::string &text) {
    try {
        const json j = json::parse(text);
        TraceMeta meta;
        meta.solver = j.at("solver").get<std::string>();
        const auto energy = j.at("energy").get<std::string>();
        if (energy != "H" && energy != "W")
            throw TraceFormatError("meta: energy must be H or W");
        meta.kind = energy == "H" ? EnergyKind::H : EnergyKind::W;
        meta.lambda = j.at("lambda").get<double>();
        meta.sequence_proxy = j.at("sequence_proxy").get<bool>();
        const auto &c = j.at("constants");
        meta.constants.L = c.at("L").get<double>();
        meta.constants.L_smooth = c.at("L_smooth").get<double>();
        meta.constants.kappa = c.at("kappa").get<double>();
        meta.constants.nu = c.at("nu").get<double>();
        meta.constants.gamma = c.at("gamma").get<double>();
        meta.constants.delta = c.at("delta").get<double>();
        meta.constants.mu0 = c.at("mu0").get<double>();
        meta.support_change_k = j.at("support_change_k").get<std::vector<Index>>();
        return meta;
    } catch (const json::exception &e) {
        throw TraceFormatError(std::string("meta: ") + e.what());
    }
}

TraceAudit audit_trace(const std::vector<IterationRecord> &trace, const std::optional<TraceMeta> &meta) {
    TraceAudit out;
    if (trace.empty()) {
        out.problems.push_back("trace has no rows");
        return out;
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto &r = trace[i];
        if (r.k != static_cast<Index>(i) + 1)
            out.problems.push_back("row " + std::to_string(i + 1) + ": k=" + std::to_string(r.k) +
                                   " breaks the 1,2,3,... sequence");
        const bool finite = std::isfinite(r.beta) && std::isfinite(r.f_exact) && std::isfinite(r.f_smooth) &&
                            std::isfinite(r.F) && std::isfinite(r.energy) && std::isfinite(r.step_norm) &&
                            (!r.mu || std::isfinite(*r.mu));
        if (!finite)
            out.problems.push_back("k=" + std::to_string(r.k) + ": non-finite value");
        if ((r.regime == Regime::Final) != (i + 1 == trace.size()))
            out.problems.push_back("k=" + std::to_string(r.k) + ": 'final' must label exactly the last row");
    }

    if (!meta) {
        for (std::size_t i = 1; i < trace.size(); ++i) {
            const double prev = trace[i - 1].energy;
            if (trace[i].energy - prev > 1e-10 * (1.0 + std::abs(prev)))
                out.summary.add({trace[i].k, ViolationKind::EnergyIncrease, trace[i].energy, prev});
        }
        return out;
    }

    out.used_meta = true;
    const bool smoothed = meta->kind == EnergyKind::H;
    const std::set<Index> changes(meta->support_change_k.begin(), meta->support_change_k.end());
    auto changed = [&](Index k) { return changes.count(k) > 0; };
    EnergyMonitor monitor(meta->kind, meta->constants, meta->sequence_proxy);
    const double L = meta->constants.L;
    const double Ls = meta->constants.L_smooth;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto &r = trace[i];
        if (smoothed != r.mu.has_value()) {
            out.problems.push_back("k=" + std::to_string(r.k) + ": mu_k presence does not match the energy kind");
            return out;
        }
        const double mu_cur = smoothed ? *r.mu : 1.0;
        const double mu_prev = smoothed ? (i == 0 ? mu_cur : *trace[i - 1].mu) : 1.0;
        const double objective_value = r.f_smooth + meta->lambda * static_cast<double>(r.card);
        const double step_sq = r.step_norm * r.step_norm;
        const bool prev_equal = !changed(r.k - 1);

        AuditReport rep;
        if (r.regime == Regime::Final) {
            rep = monitor.audit_final(r.k, mu_prev, mu_cur, objective_value, step_sq, prev_equal);
        } else {
            IterateBundle b;
            b.k = r.k;
            b.beta = r.beta;
            b.mu_prev = mu_prev;
            b.mu_cur = mu_cur;
            b.objective_value = objective_value;
            b.step_sq = step_sq;
            b.prev_support_equal = prev_equal;
            b.next_support_equal = !changed(r.k);
            rep = monitor.audit_descent(b);

            const BetaCaps caps = beta_caps(L, Ls, mu_prev, mu_cur);
            const double cap = r.regime == Regime::Step1    ? caps.step1
                               : r.regime == Regime::Step3b ? caps.step3b
                                                            : caps.step3b2;
            const bool ok = r.beta >= 0.0 && (r.regime == Regime::Step1 ? r.beta < cap : r.beta <= cap);
            if (!ok)
                monitor.record({r.k, ViolationKind::BetaCap, r.beta, cap});
        }
        // Reals round-trip exactly through %.17g, but step_norm^2 does not
        // reproduce the squared norm bit for bit.
        if (std::abs(rep.energy - r.energy) > 1e-9 * (1.0 + std::abs(r.energy)))
            out.problems.push_back("k=" + std::to_string(r.k) + ": energy column " + fmt(r.energy) +
                                   " differs from recomputed " + fmt(rep.energy));
        if (out.problems.size() > 32)
            break;
    }
    out.summary = monitor.summary();
    return out;
}

TraceAudit audit_trace_file(const std::filesystem::path &csv_path) {
    std::ifstream in(csv_path);
    if (!in)
        throw TraceFormatError("cannot open " + csv_path.string());
    const auto trace = read_trace_csv(in);

    std::filesystem::path meta_path = csv_path;
    meta_path.replace_extension(".meta.json");
    std::optional<TraceMeta> meta;
    if (std::filesystem::exists(meta_path)) {
        std::ifstream m(meta_path);
        std::stringstream ss;
        ss << m.rdbuf();
        meta = parse_trace_meta(ss.str());
    }
    return audit_trace(trace, meta);
}

} // namespace l0box
