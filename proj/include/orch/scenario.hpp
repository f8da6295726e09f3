#pragma once

// Scenario: one self-contained simulation configuration.

#include <cstdint>
#include <vector>

#include "orch/autoscaler.hpp"
#include "orch/catalog.hpp"
#include "orch/cluster.hpp"
#include "orch/demand.hpp"

namespace orch {

enum class ControllerMode { Auto, ForceCost, ForceCapacity };

struct ControllerConfig {
    double control_interval_s = 10.0;
    ControllerMode mode = ControllerMode::Auto;
};

struct Scenario {
    double duration_s = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    Catalog catalog;
    DemandTrace demand;
    std::vector<CapacityEvent> capacity_events;  // applied in (at, file order)
    ControllerConfig controller;
    ScalerConfig scaler;
    std::vector<int> initial_available;  // catalog order
    double provision_delay_s = 90.0;
    double queue_seconds = 1.0;   // per-replica queue bound, in seconds of work
    double latency_kappa = 0.5;   // latency blow-up steepness past the knee
};

// Full structural validation; throws ValidationError naming the field.
// Includes the ForceCost feasibility pre-check (peak demand must fit the
// pool's total throughput when failover is disabled).
void validate_scenario(const Scenario& scenario);

}  // namespace orch
