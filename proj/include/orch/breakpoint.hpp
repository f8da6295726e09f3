#pragma once

// Single-replica load sweep: ramps offered load past the unit's maximum
// throughput and finds the breakpoint — the first load level whose observed
// latency exceeds the unit's saturation threshold.

#include <ostream>
#include <vector>

#include "orch/catalog.hpp"

namespace orch {

struct BreakpointRow {
    double offered_rps = 0.0;
    double served_rps = 0.0;
    double latency_s = 0.0;
    double utilization = 0.0;
};

struct BreakpointResult {
    std::vector<BreakpointRow> rows;
    bool found = false;
    double breakpoint_rps = 0.0;
    double breakpoint_latency_s = 0.0;
};

// Sweeps offered load on one replica from 0 to 1.5x max_throughput in
// `increments` uniform steps (increments + 1 rows).
BreakpointResult breakpoint_sweep(const DeploymentUnitSpec& du, double kappa,
                                  int increments = 60);

void write_breakpoint_csv(std::ostream& out, const BreakpointResult& result);

}  // namespace orch
