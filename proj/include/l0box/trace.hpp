// l0box: box-constrained l0-penalized regression solvers
// Copyright 2026 The l0box Authors
// Licensed under Apache 2.0

#pragma once

#include "l0box/diagnostics.hpp"
#include "l0box/solvers.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace l0box {

inline constexpr const char *kTraceHeader = "k,regime,beta_k,mu_k,card,f_exact,f_smooth,F,energy,step_norm";

class TraceFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Header plus one row per record, reals as %.17g, empty mu_k when absent.
void write_trace_csv(std::ostream &os, const std::vector<IterationRecord> &trace);
std::vector<IterationRecord> read_trace_csv(std::istream &is);

Regime parse_regime(const std::string &s);

/// Sidecar data the CSV columns cannot carry: which iterations changed the
/// support, and the constants the energy was computed with.
struct TraceMeta {
    std::string solver;
    EnergyKind kind = EnergyKind::H;
    TheoryConstants constants;
    double lambda = 0.0;
    bool sequence_proxy = false;
    /// k such that I(x^k) != I(x^{k+1}).
    std::vector<Index> support_change_k;
};

TraceMeta make_trace_meta(const std::string &solver, const SolveResult &result, double lambda,
                          bool sequence_proxy);
std::string trace_meta_json(const TraceMeta &meta);
TraceMeta parse_trace_meta(const std::string &json);

struct TraceAudit {
    bool used_meta = false;
    AuditSummary summary;
    /// Structural problems: gaps in k, energy column disagreeing with the
    /// recomputed value, non-finite entries.
    std::vector<std::string> problems;

    bool clean() const { return summary.total() == 0 && problems.empty(); }
};

/// Replays the energy checks over a trace. Without metadata only the
/// structure and the monotonicity of the energy column are checked.
TraceAudit audit_trace(const std::vector<IterationRecord> &trace, const std::optional<TraceMeta> &meta);

/// Reads TRACE.csv and, if present, the sidecar TRACE.meta.json.
TraceAudit audit_trace_file(const std::filesystem::path &csv_path);

} // namespace l0box
