#include "orch/scenario.hpp"

#include <string>

#include "orch/errors.hpp"

namespace orch {

namespace {

void validate_demand(const DemandTrace& demand) {
    if (demand.cycle_s <= 0.0) {
        throw ValidationError("demand: cycle must be > 0");
    }
    if (demand.noise_pct < 0.0 || demand.noise_pct > 0.5) {
        throw ValidationError("demand: noise_pct must be in [0, 0.5]");
    }
    if (demand.base_rps < 0.0) {
        throw ValidationError("demand: base_rps must be >= 0");
    }
    if (demand.base_rps > demand.peak_rps) {
        throw ValidationError("demand: base_rps must be <= peak_rps");
    }
    if (demand.kind == DemandKind::PiecewiseTable) {
        if (demand.points.empty()) {
            throw ValidationError("demand: table trace needs at least 1 point");
        }
        double prev = -1.0;
        for (const auto& p : demand.points) {
            if (p.t < 0.0 || p.t >= demand.cycle_s) {
                throw ValidationError(
                    "demand: point times must lie in [0, cycle)");
            }
            if (p.t <= prev) {
                throw ValidationError(
                    "demand: point times must be strictly increasing");
            }
            if (p.rps < 0.0) {
                throw ValidationError("demand: point rates must be >= 0");
            }
            prev = p.t;
        }
    }
}

}  // namespace

void validate_scenario(const Scenario& scenario) {
    if (scenario.duration_s <= 0.0) {
        throw ValidationError("scenario: duration must be > 0");
    }
    if (scenario.dt <= 0.0) {
        throw ValidationError("scenario: dt must be > 0");
    }
    if (scenario.dt > scenario.controller.control_interval_s) {
        throw ValidationError("scenario: dt must be <= control_interval");
    }
    if (scenario.provision_delay_s < 0.0) {
        throw ValidationError("scenario: provision_delay must be >= 0");
    }
    if (scenario.queue_seconds < 0.0) {
        throw ValidationError("scenario: queue_seconds must be >= 0");
    }
    if (scenario.latency_kappa < 0.0) {
        throw ValidationError("scenario: latency_kappa must be >= 0");
    }

    validate_catalog(scenario.catalog);
    validate_demand(scenario.demand);

    if (scenario.scaler.cooldown_up_s < 0.0 ||
        scenario.scaler.cooldown_down_s < 0.0) {
        throw ValidationError("scaler: cooldowns must be >= 0");
    }
    if (scenario.scaler.min_replicas < 0) {
        throw ValidationError("scaler: min_replicas must be >= 0");
    }
    if (scenario.scaler.min_replicas > scenario.scaler.max_replicas) {
        throw ValidationError("scaler: min_replicas must be <= max_replicas");
    }

    if (scenario.initial_available.size() != scenario.catalog.size()) {
        throw ValidationError("pool: availability must cover every unit");
    }
    for (int a : scenario.initial_available) {
        if (a < 0) throw ValidationError("pool: availability must be >= 0");
    }

    for (const auto& ev : scenario.capacity_events) {
        if (ev.at < 0.0) {
            throw ValidationError("capacity_events: 'at' must be >= 0");
        }
        if (ev.new_available < 0) {
            throw ValidationError(
                "capacity_events: new_available must be >= 0");
        }
        if (scenario.catalog.index_of(ev.du_id) < 0) {
            throw ValidationError("capacity_events: unknown du_id '" +
                                  ev.du_id + "'");
        }
    }

    if (scenario.controller.mode == ControllerMode::ForceCost) {
        // No failover available: the pool must be able to cover the worst
        // case demand outright.
        double total = 0.0;
        for (std::size_t i = 0; i < scenario.catalog.size(); ++i) {
            total += scenario.initial_available[i] *
                     scenario.catalog.units[i].max_throughput;
        }
        const double worst =
            scenario.demand.peak_rps * (1.0 + scenario.demand.noise_pct);
        if (worst > total) {
            throw ValidationError(
                "scenario: peak demand " + std::to_string(worst) +
                " rps exceeds total pool capacity " + std::to_string(total) +
                " rps with failover forced off");
        }
    }
}

}  // namespace orch
