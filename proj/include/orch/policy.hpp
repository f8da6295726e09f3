#pragma once

// Pure decision core: traffic weight computation, weight renormalization on
// capacity loss, mode switching, throughput targets, and the cost-minimizing
// replica allocation solver. Everything here is a pure function of its
// inputs and safe to call concurrently.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orch/catalog.hpp"

namespace orch {

enum class Mode { CostOptimized, CapacityOptimized };

std::string to_string(Mode mode);

struct WeightEntry {
    std::string du_id;
    double weight = 0.0;
};

// Normalized traffic split over the catalog, tagged with the mode that
// produced it. Weights of active entries sum to 1 within 1e-9.
struct TrafficWeights {
    std::vector<WeightEntry> entries;  // catalog order
    Mode mode = Mode::CostOptimized;

    double weight_for(std::string_view du_id) const;
};

struct ReplicaCount {
    std::string du_id;
    int count = 0;
};

struct AllocationPlan {
    std::vector<ReplicaCount> replicas;  // catalog order, zeros included
    double total_cost_per_hour = 0.0;
    double supplied_throughput = 0.0;
    bool optimal = false;  // true iff produced by the exact solver
};

// What the controller saw at a control tick: standing replica requests vs.
// pool availability, plus offered and completed rates.
struct CapacityObservation {
    std::vector<int> requested;  // catalog order
    std::vector<int> available;
    double demand_rps = 0.0;
    double supply_rps = 0.0;
};

enum class SolveMethod { Greedy, Exact };

// Shares proportional to inverse cost: w_i = (1/c_i) / sum_j (1/c_j).
std::vector<double> inverse_cost_shares(std::span<const double> costs);

// Cost-optimized weights over per-inference costs; cheaper units get more
// traffic. Throws std::invalid_argument on an empty catalog.
TrafficWeights cost_weights(const Catalog& catalog);

// Uniform weights over units with available capacity; zero elsewhere.
// Throws InfeasibleError("total capacity exhausted") when none is available.
TrafficWeights capacity_weights(const Catalog& catalog,
                                const std::vector<bool>& available_mask);

// Zeroes inactive units and rescales the rest to sum to 1; mode preserved.
// Throws std::invalid_argument when no active unit carries weight.
TrafficWeights renormalize(const TrafficWeights& weights,
                           const std::vector<bool>& active_mask);

// Mean of the per-unit maximum throughputs.
double target_throughput(const Catalog& catalog);

// Per-unit min(target, max_throughput): the uniform-load cap each unit can
// be driven to under round-robin.
std::vector<double> adjusted_throughputs(const Catalog& catalog);

// Weighted supply: sum_i w_i * T^max_i * replicas_i.
double supply_throughput(const TrafficWeights& weights,
                         std::span<const int> replicas,
                         const Catalog& catalog);

// Traffic-weighted mean base latency: sum_i w_i * L_i.
double avg_latency(const TrafficWeights& weights, const Catalog& catalog);

// Minimum-cost integer replica counts with supply >= demand and
// count_i <= capacity_i. Greedy fills ascending per-inference cost; Exact is
// bounded exhaustive enumeration (count_i <= min(capacity_i,
// ceil(demand / T^max_i)), which never excludes an optimum). Ties break by
// fewer total replicas, then replicas on earlier catalog units.
// Throws InfeasibleError with the shortfall when total capacity < demand.
AllocationPlan solve_allocation(double demand_rps, const Catalog& catalog,
                                std::span<const int> capacity,
                                SolveMethod method);

// Binary switching: any requested_i > available_i forces CapacityOptimized;
// reversion to CostOptimized happens only at a cycle boundary with no
// shortfall outstanding. Never returns CostOptimized while a shortfall
// exists.
Mode select_mode(Mode current, const CapacityObservation& obs,
                 bool at_cycle_boundary);

}  // namespace orch
