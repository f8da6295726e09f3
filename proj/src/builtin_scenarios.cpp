#include "orch/scenario_io.hpp"

#include <stdexcept>

namespace orch {

namespace {

// Shared five-unit catalog: the sd21 serving options across Neuron and
// NVIDIA accelerators with their measured hourly cost, breakpoint
// throughput, and light-load latency.
constexpr const char* kCatalogJson = R"json(
  "catalog": {
    "units": [
      {"id": "sd21-inf2", "model": "sd21", "hardware": "inf2",
       "framework": "neuron", "execution_mode": "graph",
       "cost_per_hour": 0.7582, "max_throughput": 105, "base_latency": 0.67},
      {"id": "sd21-trn1", "model": "sd21", "hardware": "trn1",
       "framework": "neuron", "execution_mode": "graph",
       "cost_per_hour": 1.3438, "max_throughput": 130, "base_latency": 0.51},
      {"id": "sd21-g5-triton", "model": "sd21", "hardware": "a10g",
       "framework": "triton", "execution_mode": "graph",
       "cost_per_hour": 1.0060, "max_throughput": 90, "base_latency": 0.68},
      {"id": "sd21-g6-triton", "model": "sd21", "hardware": "l4",
       "framework": "triton", "execution_mode": "graph",
       "cost_per_hour": 0.8048, "max_throughput": 61, "base_latency": 0.96},
      {"id": "sd21-g5-cuda", "model": "sd21", "hardware": "a10g",
       "framework": "cuda", "execution_mode": "eager",
       "cost_per_hour": 1.0060, "max_throughput": 60, "base_latency": 0.92}
    ]
  })json";

// Cyclic load against an unconstrained pool: the controller stays
// cost-optimized and the cheapest unit carries the largest traffic share.
std::string cost_optimized_json() {
    return std::string("{\n") + R"json(
  "duration": 1200,
  "dt": 1,
  "seed": 42,
)json" + kCatalogJson + R"json(,
  "demand": {"kind": "sine", "base_rps": 20, "peak_rps": 300,
             "cycle": 600, "noise_pct": 0.05},
  "controller": {"control_interval": 10, "mode": "auto"},
  "scaler": {"cooldown_up": 30, "cooldown_down": 120,
             "min_replicas": 0, "max_replicas": 64},
  "provision_delay": 30,
  "queue_seconds": 1.0
}
)json";
}

// Steady demand equal to the catalog's total breakpoint throughput, one
// replica per unit, uniform weights forced: per-unit served rates settle at
// min(mean throughput, unit max).
std::string capacity_optimized_json() {
    return std::string("{\n") + R"json(
  "duration": 300,
  "dt": 1,
  "seed": 7,
)json" + kCatalogJson + R"json(,
  "demand": {"kind": "sine", "base_rps": 446, "peak_rps": 446,
             "cycle": 300, "noise_pct": 0.0},
  "controller": {"control_interval": 10, "mode": "force_capacity"},
  "scaler": {"cooldown_up": 30, "cooldown_down": 120,
             "min_replicas": 0, "max_replicas": 64},
  "pool": {"sd21-inf2": 1, "sd21-trn1": 1, "sd21-g5-triton": 1,
           "sd21-g6-triton": 1, "sd21-g5-cuda": 1},
  "provision_delay": 30,
  "queue_seconds": 1.0
}
)json";
}

// Two demand waves; the cheapest pool loses all capacity mid-way up the
// first wave and regains it on the way down. The controller fails over to
// uniform weights and falls back to cost weights at the next trough.
std::string failover_json() {
    return std::string("{\n") + R"json(
  "duration": 1200,
  "dt": 1,
  "seed": 1,
)json" + kCatalogJson + R"json(,
  "demand": {"kind": "sine", "base_rps": 10, "peak_rps": 350,
             "cycle": 600, "noise_pct": 0.0},
  "capacity_events": [
    {"at": 155, "du_id": "sd21-inf2", "new_available": 0},
    {"at": 450, "du_id": "sd21-inf2", "new_available": 64}
  ],
  "controller": {"control_interval": 10, "mode": "auto"},
  "scaler": {"cooldown_up": 10, "cooldown_down": 120,
             "min_replicas": 0, "max_replicas": 64},
  "provision_delay": 30,
  "queue_seconds": 1.0
}
)json";
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = {
        "cost-optimized", "capacity-optimized", "failover"};
    return names;
}

bool is_builtin_scenario(std::string_view name) {
    for (const auto& n : builtin_scenario_names()) {
        if (n == name) return true;
    }
    return false;
}

std::string builtin_scenario_json(std::string_view name) {
    if (name == "cost-optimized") return cost_optimized_json();
    if (name == "capacity-optimized") return capacity_optimized_json();
    if (name == "failover") return failover_json();
    throw std::invalid_argument("unknown builtin scenario '" +
                                std::string(name) + "'");
}

}  // namespace orch
