#include "orch/breakpoint.hpp"

#include <algorithm>
#include <stdexcept>

#include "orch/engine.hpp"
#include "orch/metrics_io.hpp"

namespace orch {

BreakpointResult breakpoint_sweep(const DeploymentUnitSpec& du, double kappa,
                                  int increments) {
    if (increments < 50) {
        throw std::invalid_argument("sweep needs at least 50 increments");
    }

    BreakpointResult result;
    result.rows.reserve(static_cast<std::size_t>(increments) + 1);
    const double step = 1.5 * du.max_throughput / increments;

    for (int k = 0; k <= increments; ++k) {
        BreakpointRow row;
        row.offered_rps = k * step;
        row.served_rps = std::min(row.offered_rps, du.max_throughput);
        row.utilization = row.offered_rps / du.max_throughput;
        row.latency_s = observed_latency(du, row.utilization, kappa);
        if (!result.found && row.latency_s > du.breakpoint_latency) {
            result.found = true;
            result.breakpoint_rps = row.offered_rps;
            result.breakpoint_latency_s = row.latency_s;
        }
        result.rows.push_back(row);
    }
    return result;
}

void write_breakpoint_csv(std::ostream& out, const BreakpointResult& result) {
    out << "offered_rps,served_rps,latency_s,utilization\n";
    for (const auto& row : result.rows) {
        out << format_float(row.offered_rps) << ','
            << format_float(row.served_rps) << ','
            << format_float(row.latency_s) << ','
            << format_float(row.utilization) << '\n';
    }
}

}  // namespace orch
