#pragma once

// Target-tracking replica scaler with asymmetric cooldowns. Each unit holds
// per-replica load at utilization_target * max_throughput, the level derived
// from breakpoint load tests.

#include <string_view>
#include <vector>

#include "orch/catalog.hpp"

namespace orch {

struct ScalerConfig {
    double cooldown_up_s = 30.0;
    double cooldown_down_s = 120.0;
    int min_replicas = 0;
    int max_replicas = 64;
};

struct ScalerEntry {
    std::string du_id;
    int current_replicas = 0;
    double last_scale_up_at = 0.0;
    double last_scale_down_at = 0.0;
};

struct ScalerState {
    std::vector<ScalerEntry> entries;  // catalog order

    static ScalerState for_catalog(const Catalog& catalog,
                                   const ScalerConfig& config);
    int index_of(std::string_view du_id) const;
};

// Per-replica request rate the scaler tries to hold (the scaling metric's
// target value): utilization_target * max_throughput.
double target_metric(const DeploymentUnitSpec& du);

// ceil(arrival / target_metric), clamped to [min_replicas, max_replicas];
// min_replicas when arrival is zero.
int desired_replicas(const DeploymentUnitSpec& du, double arrival_rps,
                     const ScalerConfig& config);

// Applies the proposal if its direction's cooldown has elapsed, updating the
// matching timestamp; otherwise the current count is retained. Returns the
// resulting count. Throws std::invalid_argument on an unknown du_id.
int apply_cooldown(ScalerState& state, std::string_view du_id, int proposal,
                   double now, const ScalerConfig& config);

}  // namespace orch
