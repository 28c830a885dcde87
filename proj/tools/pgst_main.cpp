#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pgst/report.hpp"
#include "pgst/version.hpp"

namespace {

pgst::HamiltonianKind parse_model(const std::string& model) {
    return model == "xy" ? pgst::HamiltonianKind::XY : pgst::HamiltonianKind::XYZ;
}

void emit(const pgst::report::json& doc) {
    std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        CLI::App app{"Pretty good state transfer analysis for qubit chains"};
        app.set_version_flag("--version", std::string(pgst::kToolVersion));
        app.require_subcommand(1);

        // decide
        auto* decide = app.add_subcommand(
            "decide", "Exact transfer verdict with a machine-checkable certificate");
        int decide_n = 0;
        std::vector<int> decide_pair;
        std::string decide_model = "xyz";
        decide->add_option("--n", decide_n, "chain length")
            ->required()
            ->check(CLI::Range(2, 512));
        decide->add_option("--pair", decide_pair, "vertex pair (default: 1 n)")
            ->expected(2);
        decide->add_option("--model", decide_model, "hamiltonian model")
            ->check(CLI::IsMember({"xyz", "xy"}));
        decide->callback([&] {
            pgst::report::DecideRequest req;
            req.n = decide_n;
            if (!decide_pair.empty()) {
                req.a = decide_pair[0];
                req.b = decide_pair[1];
            }
            req.kind = parse_model(decide_model);
            emit(pgst::report::run_decide(req));
        });

        // trace
        auto* trace = app.add_subcommand(
            "trace", "Sample |U(t)_{a,b}| over a time window and write CSV");
        std::string trace_graph;
        int trace_n = 0;
        std::vector<int> trace_pair;
        double trace_t0 = 0.0, trace_t1 = 50.0;
        int trace_steps = 1001;
        std::string trace_out;
        std::string trace_model = "xyz";
        auto* graph_opt = trace->add_option("--graph", trace_graph, "graph file");
        auto* path_opt = trace->add_option("--path", trace_n, "path length")
                             ->check(CLI::Range(1, 512));
        graph_opt->excludes(path_opt);
        path_opt->excludes(graph_opt);
        trace->add_option("--pair", trace_pair, "vertex pair (default: 1 n)")
            ->expected(2);
        trace->add_option("--t0", trace_t0, "window start");
        trace->add_option("--t1", trace_t1, "window end");
        trace->add_option("--steps", trace_steps, "sample count")
            ->check(CLI::Range(2, 10000000));
        trace->add_option("--out", trace_out, "CSV output file (stdout if omitted)");
        trace->add_option("--model", trace_model, "hamiltonian model")
            ->check(CLI::IsMember({"xyz", "xy"}));
        trace->callback([&] {
            if (trace_graph.empty() && trace_n == 0)
                throw CLI::RequiresError("trace", "--graph or --path");
            const pgst::Graph g = trace_graph.empty() ? pgst::build_path(trace_n)
                                                      : pgst::load_graph(trace_graph);
            pgst::report::TraceRequest req;
            if (!trace_pair.empty()) {
                req.a = trace_pair[0];
                req.b = trace_pair[1];
            }
            req.t0 = trace_t0;
            req.t1 = trace_t1;
            req.steps = trace_steps;
            req.kind = parse_model(trace_model);
            const auto tr = pgst::report::compute_trace(g, req);
            const std::string label = trace_graph.empty() ? "path" : trace_graph;
            if (trace_out.empty()) {
                pgst::report::write_trace_csv(std::cout, tr);
            } else {
                std::ofstream out(trace_out);
                if (!out)
                    throw std::invalid_argument("cannot write CSV file '" + trace_out + "'");
                pgst::report::write_trace_csv(out, tr);
                emit(pgst::report::trace_summary(label, g, req, tr, trace_out));
            }
        });

        // peak
        auto* peak = app.add_subcommand(
            "peak", "Search for a transfer time with fidelity above 1 - epsilon");
        int peak_n = 0;
        std::vector<int> peak_pair;
        double peak_epsilon = 0.01, peak_horizon = -1.0;
        std::string peak_model = "xyz";
        bool peak_global = false;
        long long peak_budget = 10'000'000;
        peak->add_option("--path", peak_n, "chain length")
            ->required()
            ->check(CLI::Range(2, 512));
        peak->add_option("--pair", peak_pair, "vertex pair (default: 1 n)")
            ->expected(2);
        peak->add_option("--epsilon", peak_epsilon, "fidelity slack, 0 < epsilon < 1");
        peak->add_option("--horizon", peak_horizon,
                         "search horizon (default: 1e3 periods of the smallest gap)");
        peak->add_option("--model", peak_model, "hamiltonian model")
            ->check(CLI::IsMember({"xyz", "xy"}));
        peak->add_flag("--global", peak_global,
                       "report the best peak over the whole horizon");
        peak->add_option("--budget", peak_budget, "amplitude evaluation budget");
        peak->callback([&] {
            pgst::report::PeakRequest req;
            req.n = peak_n;
            if (!peak_pair.empty()) {
                req.a = peak_pair[0];
                req.b = peak_pair[1];
            }
            req.epsilon = peak_epsilon;
            req.horizon = peak_horizon;
            req.kind = parse_model(peak_model);
            req.global_search = peak_global;
            req.budget = peak_budget;
            emit(pgst::report::run_peak(req));
        });

        // sweep
        auto* sweep = app.add_subcommand(
            "sweep", "Verdict, witness and empirical fidelity for each n up to a bound");
        int sweep_max_n = 0;
        double sweep_epsilon = 0.01, sweep_horizon = -1.0;
        std::string sweep_model = "xyz";
        std::string sweep_format = "json";
        sweep->add_option("--max-n", sweep_max_n, "largest chain length")
            ->required()
            ->check(CLI::Range(2, 512));
        sweep->add_option("--epsilon", sweep_epsilon, "fidelity slack");
        sweep->add_option("--horizon", sweep_horizon, "per-row search horizon");
        sweep->add_option("--model", sweep_model, "hamiltonian model")
            ->check(CLI::IsMember({"xyz"}));
        sweep->add_option("--format", sweep_format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sweep->callback([&] {
            pgst::report::SweepRequest req;
            req.max_n = sweep_max_n;
            req.epsilon = sweep_epsilon;
            req.horizon = sweep_horizon;
            req.kind = parse_model(sweep_model);
            const auto rows = pgst::report::run_sweep(req);
            if (sweep_format == "csv") {
                std::cout << pgst::report::sweep_csv(rows);
            } else {
                for (const auto& row : rows) std::cout << row.dump() << "\n";
            }
        });

        // witness
        auto* witness = app.add_subcommand(
            "witness", "Exact witness relation for a chain without PGST");
        int witness_n = 0;
        witness->add_option("--n", witness_n, "chain length")
            ->required()
            ->check(CLI::Range(2, 512));
        witness->callback([&] { emit(pgst::report::run_witness(witness_n)); });

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "pgst: error: " << e.what() << "\n";
        return 2;
    }
}
