#include "orch/autoscaler.hpp"

#include <cmath>
#include <stdexcept>

namespace orch {

namespace {
// Allows the very first scale decision regardless of cooldowns.
constexpr double kNever = -1e18;
}  // namespace

ScalerState ScalerState::for_catalog(const Catalog& catalog,
                                     const ScalerConfig& config) {
    ScalerState state;
    state.entries.reserve(catalog.size());
    for (const auto& du : catalog.units) {
        state.entries.push_back({du.id, config.min_replicas, kNever, kNever});
    }
    return state;
}

int ScalerState::index_of(std::string_view du_id) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].du_id == du_id) return static_cast<int>(i);
    }
    return -1;
}

double target_metric(const DeploymentUnitSpec& du) {
    return du.utilization_target * du.max_throughput;
}

int desired_replicas(const DeploymentUnitSpec& du, double arrival_rps,
                     const ScalerConfig& config) {
    if (arrival_rps < 0.0) {
        throw std::invalid_argument("arrival_rps must be >= 0");
    }
    if (arrival_rps == 0.0) return config.min_replicas;

    const double want = std::ceil(arrival_rps / target_metric(du));
    int count = want >= static_cast<double>(config.max_replicas)
                    ? config.max_replicas
                    : static_cast<int>(want);
    if (count < config.min_replicas) count = config.min_replicas;
    return count;
}

int apply_cooldown(ScalerState& state, std::string_view du_id, int proposal,
                   double now, const ScalerConfig& config) {
    const int i = state.index_of(du_id);
    if (i < 0) {
        throw std::invalid_argument("unknown deployment unit '" +
                                    std::string(du_id) + "'");
    }
    ScalerEntry& entry = state.entries[static_cast<std::size_t>(i)];

    if (proposal > entry.current_replicas) {
        if (now - entry.last_scale_up_at >= config.cooldown_up_s) {
            entry.current_replicas = proposal;
            entry.last_scale_up_at = now;
        }
    } else if (proposal < entry.current_replicas) {
        if (now - entry.last_scale_down_at >= config.cooldown_down_s) {
            entry.current_replicas = proposal;
            entry.last_scale_down_at = now;
        }
    }
    return entry.current_replicas;
}

}  // namespace orch
