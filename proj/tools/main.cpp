// hetero-orch: scenario runner and desk-check tool for the adaptive
// orchestration simulator.
//
//   run <scenario> --out DIR          simulate; writes metrics.csv + summary.json
//   inspect <scenario> --what WHAT    print weights | allocation | targets
//   breakpoint <scenario> --du ID --out DIR
//                                     single-replica load sweep; breakpoint.csv
//
// <scenario> is a JSON file path or a builtin name (cost-optimized,
// capacity-optimized, failover). HETERO_ORCH_OUT supplies the default
// output directory.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "orch/breakpoint.hpp"
#include "orch/engine.hpp"
#include "orch/errors.hpp"
#include "orch/metrics_io.hpp"
#include "orch/scenario_io.hpp"

namespace {

namespace fs = std::filesystem;

std::string resolve_out_dir(const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("HETERO_ORCH_OUT")) {
        if (*env) return env;
    }
    throw orch::ValidationError(
        "no output directory: pass --out or set HETERO_ORCH_OUT");
}

orch::Scenario load_with_seed(const std::string& name_or_path,
                              const std::optional<std::uint64_t>& seed) {
    orch::Scenario sc = orch::resolve_scenario(name_or_path);
    if (seed) {
        sc.seed = *seed;
        sc.demand.seed = *seed;
    }
    return sc;
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw orch::ValidationError("cannot write '" + path.string() + "'");
    }
    out << contents;
}

int cmd_run(const std::string& scenario_arg, const std::string& out_arg,
            const std::optional<std::uint64_t>& seed) {
    const orch::Scenario sc = load_with_seed(scenario_arg, seed);
    const fs::path out_dir = resolve_out_dir(out_arg);
    fs::create_directories(out_dir);

    const orch::RunResult result = orch::run_scenario(sc);
    write_file(out_dir / "metrics.csv",
               orch::metrics_csv_string(sc.catalog, result.series));
    write_file(out_dir / "summary.json",
               orch::summary_json_string(sc.catalog, result.summary));

    std::printf("wrote %s and %s\n",
                (out_dir / "metrics.csv").string().c_str(),
                (out_dir / "summary.json").string().c_str());
    std::printf("total_cost_usd=%s served=%s errored=%s error_fraction=%s "
                "mode_switches=%zu\n",
                orch::format_float(result.summary.total_cost_usd).c_str(),
                orch::format_float(result.summary.total_served).c_str(),
                orch::format_float(result.summary.total_errored).c_str(),
                orch::format_float(result.summary.error_fraction).c_str(),
                result.summary.mode_switches.size());
    return 0;
}

void print_plan(const char* label, const orch::AllocationPlan& plan) {
    std::printf("%s:\n", label);
    for (const auto& r : plan.replicas) {
        std::printf("  %-16s %d\n", r.du_id.c_str(), r.count);
    }
    std::printf("  cost_per_hour    %s\n",
                orch::format_float(plan.total_cost_per_hour).c_str());
    std::printf("  supply_rps       %s\n",
                orch::format_float(plan.supplied_throughput).c_str());
    std::printf("  optimal          %s\n", plan.optimal ? "true" : "false");
}

int cmd_inspect(const std::string& scenario_arg, const std::string& what,
                const std::optional<std::uint64_t>& seed) {
    const orch::Scenario sc = load_with_seed(scenario_arg, seed);
    const orch::Catalog& cat = sc.catalog;

    if (what == "weights") {
        const orch::TrafficWeights cost = orch::cost_weights(cat);
        const orch::TrafficWeights cap = orch::capacity_weights(
            cat, std::vector<bool>(cat.size(), true));
        std::printf("%-16s %-14s %-12s %s\n", "du_id", "cost/inference",
                    "cost_weight", "capacity_weight");
        for (std::size_t i = 0; i < cat.size(); ++i) {
            std::printf("%-16s %-14.6f %-12.6f %.6f\n",
                        cat.units[i].id.c_str(),
                        orch::cost_per_inference(cat.units[i]),
                        cost.entries[i].weight, cap.entries[i].weight);
        }
        return 0;
    }
    if (what == "targets") {
        const double target = orch::target_throughput(cat);
        const std::vector<double> adjusted = orch::adjusted_throughputs(cat);
        std::printf("target_throughput: %s\n",
                    orch::format_float(target).c_str());
        std::printf("%-16s %-12s %s\n", "du_id", "max_rps", "adjusted_rps");
        for (std::size_t i = 0; i < cat.size(); ++i) {
            std::printf("%-16s %-12s %s\n", cat.units[i].id.c_str(),
                        orch::format_float(cat.units[i].max_throughput).c_str(),
                        orch::format_float(adjusted[i]).c_str());
        }
        return 0;
    }
    // allocation: both solver routes at the trace's peak demand
    const double demand = sc.demand.peak_rps;
    std::printf("demand: %s rps\n", orch::format_float(demand).c_str());
    print_plan("greedy", orch::solve_allocation(demand, cat,
                                                sc.initial_available,
                                                orch::SolveMethod::Greedy));
    print_plan("exact", orch::solve_allocation(demand, cat,
                                               sc.initial_available,
                                               orch::SolveMethod::Exact));
    return 0;
}

int cmd_breakpoint(const std::string& scenario_arg, const std::string& du_id,
                   const std::string& out_arg,
                   const std::optional<std::uint64_t>& seed) {
    const orch::Scenario sc = load_with_seed(scenario_arg, seed);
    const orch::DeploymentUnitSpec& du = sc.catalog.at(du_id);
    const fs::path out_dir = resolve_out_dir(out_arg);
    fs::create_directories(out_dir);

    const orch::BreakpointResult result =
        orch::breakpoint_sweep(du, sc.latency_kappa);
    std::ostringstream csv;
    orch::write_breakpoint_csv(csv, result);
    write_file(out_dir / "breakpoint.csv", csv.str());

    std::printf("wrote %s\n", (out_dir / "breakpoint.csv").string().c_str());
    if (result.found) {
        std::printf("breakpoint: offered %s rps -> latency %s s "
                    "(threshold %s s, max throughput %s rps)\n",
                    orch::format_float(result.breakpoint_rps).c_str(),
                    orch::format_float(result.breakpoint_latency_s).c_str(),
                    orch::format_float(du.breakpoint_latency).c_str(),
                    orch::format_float(du.max_throughput).c_str());
    } else {
        std::printf("no breakpoint found: latency never exceeded %s s over "
                    "the sweep\n",
                    orch::format_float(du.breakpoint_latency).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive orchestration simulator for heterogeneous "
                 "accelerator pools"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "override the scenario seed");

    std::string scenario_arg;
    std::string out_arg;
    std::string what = "weights";
    std::string du_id;

    CLI::App* run = app.add_subcommand("run", "simulate a scenario");
    run->add_option("scenario", scenario_arg,
                    "scenario file or builtin name")->required();
    run->add_option("--out", out_arg, "output directory");

    CLI::App* inspect =
        app.add_subcommand("inspect", "print decision tables");
    inspect->add_option("scenario", scenario_arg,
                        "scenario file or builtin name")->required();
    inspect->add_option("--what", what, "weights | allocation | targets")
        ->check(CLI::IsMember({"weights", "allocation", "targets"}));

    CLI::App* breakpoint =
        app.add_subcommand("breakpoint", "single-replica load sweep");
    breakpoint->add_option("scenario", scenario_arg,
                           "scenario file or builtin name")->required();
    breakpoint->add_option("--du", du_id, "deployment unit id")->required();
    breakpoint->add_option("--out", out_arg, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_arg, out_arg, seed);
        if (inspect->parsed()) return cmd_inspect(scenario_arg, what, seed);
        return cmd_breakpoint(scenario_arg, du_id, out_arg, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
