#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "pgst/dynamics.hpp"
#include "pgst/exact.hpp"
#include "pgst/graph.hpp"

namespace pgst::report {

using json = nlohmann::ordered_json;

json tool_header();

struct DecideRequest {
    int n = 0;
    int a = 1;
    int b = -1;  // -1: default to n
    HamiltonianKind kind = HamiltonianKind::XYZ;
};

/// Exact decision for Laplacian mirror pairs; numeric cospectrality analysis
/// always, exact verdict marked unavailable for XY or non-mirror pairs.
json run_decide(const DecideRequest& req);

struct PeakRequest {
    int n = 0;
    int a = 1;
    int b = -1;
    double epsilon = 0.01;   // target fidelity 1 - epsilon
    double horizon = -1.0;   // <= 0: default_peak_horizon
    HamiltonianKind kind = HamiltonianKind::XYZ;
    bool global_search = false;
    long long budget = 10'000'000;
};

json run_peak(const PeakRequest& req);

struct TraceRequest {
    int a = 1;
    int b = -1;
    double t0 = 0.0;
    double t1 = 50.0;
    int steps = 1001;
    HamiltonianKind kind = HamiltonianKind::XYZ;
};

FidelityTrace compute_trace(const Graph& g, const TraceRequest& req);

/// CSV with header `t,re,im,prob`, 17 significant digits per field.
void write_trace_csv(std::ostream& out, const FidelityTrace& trace);

json trace_summary(const std::string& input_label, const Graph& g,
                   const TraceRequest& req, const FidelityTrace& trace,
                   const std::string& csv_path);

struct SweepRequest {
    int max_n = 2;
    double epsilon = 0.01;
    double horizon = -1.0;
    HamiltonianKind kind = HamiltonianKind::XYZ;
};

/// One row per chain length n = 2..max_n: exact verdict with witness,
/// best empirical fidelity within the horizon, and for powers of two the
/// internal mirror-pair checks. Deterministic order by n then j.
std::vector<json> run_sweep(const SweepRequest& req);

std::string sweep_csv(const std::vector<json>& rows);

/// Exact witness relation for a chain of length n (null witness for powers
/// of two, where PGST holds).
json run_witness(int n);

/// Serialization of an exact decision:
/// {model, n, pair, verdict, basis, sigma, witness, ...}.
json exact_decision_json(const exact::PGSTDecision& decision,
                         bool attach_constructive_witness);

const char* model_name(HamiltonianKind kind);

/// Operator whose exponential the dynamics used: L for XYZ (the |E| I shift
/// only rotates the global phase and is dropped), 2A for XY.
const char* operator_name(HamiltonianKind kind);

SymMatrix dynamics_operator(const Graph& g, HamiltonianKind kind);

}  // namespace pgst::report
