#pragma once

// Deterministic fixed-step fluid simulator. Traffic is a real-valued rate:
// each step dispatches demand across units by the current weights, serves up
// to granted capacity, queues up to the queue bound, and errors the rest.
// The control loop (mode -> weights -> allocation -> autoscaling ->
// provisioning) runs on control-interval boundaries.

#include <cstddef>
#include <vector>

#include "orch/autoscaler.hpp"
#include "orch/catalog.hpp"
#include "orch/cluster.hpp"
#include "orch/policy.hpp"
#include "orch/scenario.hpp"

namespace orch {

// Flat base latency up to the knee (utilization_target), then a sharp
// blow-up: base * (1 + kappa*(rho - knee) / max(1 - min(rho, 0.999), 0.001)).
double observed_latency(const DeploymentUnitSpec& du, double utilization,
                        double kappa = 0.5);

struct DuSample {
    double weight = 0.0;
    int replicas = 0;   // granted
    int available = 0;  // pool capacity
    double arrival_rps = 0.0;
    double success_rps = 0.0;
    double error_rps = 0.0;
    double latency_s = 0.0;
    double utilization = 0.0;
};

struct MetricsSample {
    double t = 0.0;
    Mode mode = Mode::CostOptimized;
    std::vector<DuSample> per_du;  // catalog order
    double total_success_rps = 0.0;
    double total_error_rps = 0.0;
    double cost_usd_cum = 0.0;
};

struct ModeSwitch {
    double t = 0.0;
    Mode from = Mode::CostOptimized;
    Mode to = Mode::CostOptimized;
};

struct EngineState {
    double clock = 0.0;
    Mode mode = Mode::CostOptimized;
    TrafficWeights weights;
    PoolState pool;
    ScalerState scaler;
    std::vector<double> queue_depth;  // request-units waiting, per DU
    double accrued_cost_usd = 0.0;
    std::vector<int> last_requested;  // standing requests from the last tick
    std::vector<ModeSwitch> switches;
    double next_control_at = 0.0;
    std::size_t next_event = 0;
};

struct Summary {
    double total_cost_usd = 0.0;
    double total_arrived = 0.0;  // request-units offered over the run
    double total_served = 0.0;
    double total_errored = 0.0;
    double error_fraction = 0.0;  // errored / arrived
    std::vector<double> mean_latency_s;  // per served request, catalog order
    std::vector<ModeSwitch> mode_switches;
};

struct RunResult {
    std::vector<MetricsSample> series;
    Summary summary;
};

class Engine {
public:
    // Validates the scenario and warm-starts at t=0: the initial control
    // decision provisions with zero delay, as experiments begin against an
    // already-running deployment.
    explicit Engine(Scenario scenario);

    // Advances one dt and returns the step's sample.
    MetricsSample step();

    const EngineState& state() const { return state_; }
    const Scenario& scenario() const { return scenario_; }

private:
    void apply_due_events(double now);
    bool at_cycle_boundary(double demand) const;
    void control_tick(double demand, double provision_delay_s);

    Scenario scenario_;
    EngineState state_;
};

// Runs the full horizon. Bit-identical output for identical scenarios.
RunResult run_scenario(const Scenario& scenario);

}  // namespace orch
