#include "orch/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "orch/demand.hpp"
#include "orch/errors.hpp"

namespace orch {

double observed_latency(const DeploymentUnitSpec& du, double utilization,
                        double kappa) {
    if (utilization < 0.0) {
        throw std::invalid_argument("utilization must be >= 0");
    }
    const double knee = du.utilization_target;
    if (utilization <= knee) return du.base_latency;
    const double denom = std::max(1.0 - std::min(utilization, 0.999), 0.001);
    return du.base_latency * (1.0 + kappa * (utilization - knee) / denom);
}

Engine::Engine(Scenario scenario) : scenario_(std::move(scenario)) {
    validate_scenario(scenario_);
    std::stable_sort(scenario_.capacity_events.begin(),
                     scenario_.capacity_events.end(),
                     [](const CapacityEvent& a, const CapacityEvent& b) {
                         return a.at < b.at;
                     });

    const Catalog& cat = scenario_.catalog;
    const std::size_t n = cat.size();
    state_.pool = PoolState::for_catalog(cat, scenario_.initial_available);
    state_.scaler = ScalerState::for_catalog(cat, scenario_.scaler);
    state_.queue_depth.assign(n, 0.0);
    state_.last_requested.assign(n, 0);
    state_.mode = scenario_.controller.mode == ControllerMode::ForceCapacity
                      ? Mode::CapacityOptimized
                      : Mode::CostOptimized;
    state_.weights = cost_weights(cat);

    // Warm start: the run begins against an already-provisioned deployment,
    // so the t=0 control decision takes effect with no provisioning delay.
    apply_due_events(0.0);
    control_tick(demand_at(scenario_.demand, 0.0), /*provision_delay_s=*/0.0);
    activate_ready(state_.pool, 0.0);
    state_.next_control_at = scenario_.controller.control_interval_s;
}

void Engine::apply_due_events(double now) {
    while (state_.next_event < scenario_.capacity_events.size() &&
           scenario_.capacity_events[state_.next_event].at <= now + 1e-9) {
        apply_capacity_event(state_.pool,
                             scenario_.capacity_events[state_.next_event]);
        ++state_.next_event;
    }
}

bool Engine::at_cycle_boundary(double demand) const {
    const DemandTrace& d = scenario_.demand;
    return demand < d.base_rps + 0.05 * (d.peak_rps - d.base_rps);
}

void Engine::control_tick(double demand, double provision_delay_s) {
    const Catalog& cat = scenario_.catalog;
    const std::size_t n = cat.size();

    CapacityObservation obs;
    obs.requested = state_.last_requested;
    obs.available.resize(n);
    obs.demand_rps = demand;
    for (std::size_t i = 0; i < n; ++i) {
        obs.available[i] = state_.pool.entries[i].available;
        obs.supply_rps +=
            state_.pool.entries[i].granted * cat.units[i].max_throughput;
    }

    Mode next = state_.mode;
    switch (scenario_.controller.mode) {
        case ControllerMode::Auto:
            next = select_mode(state_.mode, obs, at_cycle_boundary(demand));
            break;
        case ControllerMode::ForceCost:
            next = Mode::CostOptimized;
            break;
        case ControllerMode::ForceCapacity:
            next = Mode::CapacityOptimized;
            break;
    }
    if (next != state_.mode) {
        state_.switches.push_back({state_.clock, state_.mode, next});
        state_.mode = next;
    }

    if (state_.mode == Mode::CostOptimized) {
        std::vector<bool> active(n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            const PoolEntry& pe = state_.pool.entries[i];
            active[i] = pe.granted > 0 || pe.available > 0;
            any = any || active[i];
        }
        if (any) state_.weights = renormalize(cost_weights(cat), active);
        // otherwise the cluster is fully drained; hold the last weights
    } else {
        std::vector<bool> mask(n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            mask[i] = state_.pool.entries[i].available > 0;
            any = any || mask[i];
        }
        if (!any) {
            for (std::size_t i = 0; i < n; ++i) {
                mask[i] = state_.pool.entries[i].granted > 0;
                any = any || mask[i];
            }
        }
        if (any) state_.weights = capacity_weights(cat, mask);
    }

    // Replica floors from the cost solver: covers total demand at minimum
    // cost (the weights then skew traffic toward cheap units). Solved at
    // want-level (scaler bounds, not pool bounds) so that a pool shortfall
    // remains observable as requested > available.
    std::vector<int> plan_counts(n, 0);
    if (state_.mode == Mode::CostOptimized) {
        const std::vector<int> caps(n, scenario_.scaler.max_replicas);
        try {
            const AllocationPlan plan =
                solve_allocation(demand, cat, caps, SolveMethod::Greedy);
            for (std::size_t i = 0; i < n; ++i) {
                plan_counts[i] = plan.replicas[i].count;
            }
        } catch (const InfeasibleError&) {
            // demand beyond everything the scaler may request: saturate and
            // let the unmet share surface as serving errors
            plan_counts.assign(n, scenario_.scaler.max_replicas);
        }
    }

    std::vector<int> requested(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double arrival = demand * state_.weights.entries[i].weight;
        int want = desired_replicas(cat.units[i], arrival, scenario_.scaler);
        if (state_.mode == Mode::CostOptimized) {
            want = std::max(want, plan_counts[i]);
        }
        requested[i] = apply_cooldown(state_.scaler, cat.units[i].id, want,
                                      state_.clock, scenario_.scaler);
        request_capacity(state_.pool, cat.units[i].id, requested[i],
                         state_.clock, provision_delay_s);
    }
    state_.last_requested = std::move(requested);
}

MetricsSample Engine::step() {
    const Catalog& cat = scenario_.catalog;
    const std::size_t n = cat.size();
    const double dt = scenario_.dt;
    const double t = state_.clock;

    activate_ready(state_.pool, t);
    apply_due_events(t);
    const double demand = demand_at(scenario_.demand, t);
    if (t >= state_.next_control_at - 1e-9) {
        control_tick(demand, scenario_.provision_delay_s);
        state_.next_control_at += scenario_.controller.control_interval_s;
    }

    MetricsSample sample;
    sample.t = t;
    sample.mode = state_.mode;
    sample.per_du.resize(n);

    double step_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const DeploymentUnitSpec& du = cat.units[i];
        const PoolEntry& pe = state_.pool.entries[i];
        const double weight = state_.weights.entries[i].weight;
        const double arrival_rps = demand * weight;

        const double serveable = pe.granted * du.max_throughput * dt;
        const double incoming = arrival_rps * dt + state_.queue_depth[i];
        const double served = std::min(incoming, serveable);
        const double leftover = incoming - served;
        const double queue_bound =
            pe.granted * du.max_throughput * scenario_.queue_seconds;
        const double new_queue = std::min(leftover, queue_bound);
        const double errored = leftover - new_queue;
        const double utilization = incoming / std::max(serveable, 1e-12);

        state_.queue_depth[i] = new_queue;
        step_cost += pe.granted * du.cost_per_hour * dt / 3600.0;

        DuSample& s = sample.per_du[i];
        s.weight = weight;
        s.replicas = pe.granted;
        s.available = pe.available;
        s.arrival_rps = arrival_rps;
        s.success_rps = served / dt;
        s.error_rps = errored / dt;
        s.latency_s = observed_latency(du, utilization, scenario_.latency_kappa);
        s.utilization = utilization;
        sample.total_success_rps += s.success_rps;
        sample.total_error_rps += s.error_rps;
    }

    state_.accrued_cost_usd += step_cost;
    sample.cost_usd_cum = state_.accrued_cost_usd;
    state_.clock = t + dt;
    return sample;
}

RunResult run_scenario(const Scenario& scenario) {
    Engine engine(scenario);
    const Scenario& sc = engine.scenario();
    const long long steps = std::llround(sc.duration_s / sc.dt);
    const std::size_t n = sc.catalog.size();

    RunResult result;
    result.series.reserve(static_cast<std::size_t>(steps));
    std::vector<double> latency_weighted(n, 0.0);
    std::vector<double> served_per_du(n, 0.0);
    double arrived = 0.0;
    double served = 0.0;
    double errored = 0.0;

    for (long long k = 0; k < steps; ++k) {
        MetricsSample sample = engine.step();
        for (std::size_t i = 0; i < n; ++i) {
            const double du_served = sample.per_du[i].success_rps * sc.dt;
            arrived += sample.per_du[i].arrival_rps * sc.dt;
            served += du_served;
            errored += sample.per_du[i].error_rps * sc.dt;
            // latency averaged per served request, not per step: idle or
            // capacity-starved steps carry no traffic to weight
            latency_weighted[i] += du_served * sample.per_du[i].latency_s;
            served_per_du[i] += du_served;
        }
        result.series.push_back(std::move(sample));
    }

    Summary& summary = result.summary;
    summary.total_cost_usd = engine.state().accrued_cost_usd;
    summary.total_arrived = arrived;
    summary.total_served = served;
    summary.total_errored = errored;
    summary.error_fraction = arrived > 0.0 ? errored / arrived : 0.0;
    summary.mean_latency_s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        summary.mean_latency_s[i] =
            served_per_du[i] > 0.0 ? latency_weighted[i] / served_per_du[i]
                                   : 0.0;
    }
    summary.mode_switches = engine.state().switches;
    return result;
}

}  // namespace orch
