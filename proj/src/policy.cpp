#include "orch/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "orch/errors.hpp"

namespace orch {

namespace {

// Replica bound for the exact solver: more than ceil(demand / T^max) copies
// of one unit can never appear in an optimum, since dropping one keeps
// supply >= demand at strictly lower cost.
int enumeration_bound(double demand_rps, double max_throughput, int capacity) {
    if (demand_rps <= 0.0) return 0;
    const double need = std::ceil(demand_rps / max_throughput);
    if (need >= static_cast<double>(capacity)) return capacity;
    return static_cast<int>(need);
}

AllocationPlan make_plan(const Catalog& catalog, const std::vector<int>& counts,
                         bool optimal) {
    AllocationPlan plan;
    plan.optimal = optimal;
    plan.replicas.reserve(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        plan.replicas.push_back({catalog.units[i].id, counts[i]});
        plan.total_cost_per_hour += counts[i] * catalog.units[i].cost_per_hour;
        plan.supplied_throughput += counts[i] * catalog.units[i].max_throughput;
    }
    return plan;
}

void check_feasible(double demand_rps, const Catalog& catalog,
                    std::span<const int> capacity) {
    double total = 0.0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        total += capacity[i] * catalog.units[i].max_throughput;
    }
    if (total < demand_rps) {
        throw InfeasibleError(
            "allocation infeasible: demand " + std::to_string(demand_rps) +
                " rps exceeds total capacity " + std::to_string(total) +
                " rps (shortfall " + std::to_string(demand_rps - total) + ")",
            demand_rps - total);
    }
}

std::vector<int> greedy_counts(double demand_rps, const Catalog& catalog,
                               std::span<const int> capacity) {
    const std::size_t n = catalog.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return cost_per_inference(catalog.units[a]) <
                                cost_per_inference(catalog.units[b]);
                     });

    std::vector<int> counts(n, 0);
    double supply = 0.0;
    for (std::size_t i : order) {
        if (supply >= demand_rps) break;
        const double t = catalog.units[i].max_throughput;
        const double want = std::ceil((demand_rps - supply) / t);
        counts[i] = want >= static_cast<double>(capacity[i])
                        ? capacity[i]
                        : static_cast<int>(want);
        supply += counts[i] * t;
    }
    return counts;
}

struct ExactSearch {
    const Catalog& catalog;
    std::span<const int> bounds;
    double demand_rps;

    std::vector<int> current;
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    int best_total = 0;

    // Candidate ordering for equal cost: fewer total replicas, then replicas
    // shifted toward earlier catalog units.
    bool better(double cost, int total) const {
        if (cost != best_cost) return cost < best_cost;
        if (total != best_total) return total < best_total;
        return std::lexicographical_compare(best.begin(), best.end(),
                                            current.begin(), current.end());
    }

    void search(std::size_t i, double cost, double supply, int total) {
        if (cost > best_cost) return;  // cost only grows with depth
        if (i == catalog.size()) {
            if (supply >= demand_rps && better(cost, total)) {
                best = current;
                best_cost = cost;
                best_total = total;
            }
            return;
        }
        for (int k = 0; k <= bounds[i]; ++k) {
            current[i] = k;
            search(i + 1, cost + k * catalog.units[i].cost_per_hour,
                   supply + k * catalog.units[i].max_throughput, total + k);
        }
        current[i] = 0;
    }
};

}  // namespace

std::string to_string(Mode mode) {
    return mode == Mode::CostOptimized ? "cost" : "capacity";
}

double TrafficWeights::weight_for(std::string_view du_id) const {
    for (const auto& e : entries) {
        if (e.du_id == du_id) return e.weight;
    }
    return 0.0;
}

std::vector<double> inverse_cost_shares(std::span<const double> costs) {
    if (costs.empty()) {
        throw std::invalid_argument("cost vector must be non-empty");
    }
    std::vector<double> shares(costs.size());
    double denom = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        if (costs[i] <= 0.0) {
            throw std::domain_error("costs must be > 0");
        }
        shares[i] = 1.0 / costs[i];
        denom += shares[i];
    }
    for (auto& s : shares) s /= denom;
    return shares;
}

TrafficWeights cost_weights(const Catalog& catalog) {
    if (catalog.units.empty()) {
        throw std::invalid_argument("catalog must be non-empty");
    }
    std::vector<double> costs(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        costs[i] = cost_per_inference(catalog.units[i]);
    }
    const std::vector<double> shares = inverse_cost_shares(costs);

    TrafficWeights weights;
    weights.mode = Mode::CostOptimized;
    weights.entries.reserve(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        weights.entries.push_back({catalog.units[i].id, shares[i]});
    }
    return weights;
}

TrafficWeights capacity_weights(const Catalog& catalog,
                                const std::vector<bool>& available_mask) {
    if (available_mask.size() != catalog.size()) {
        throw std::invalid_argument("mask size must match catalog size");
    }
    const int n = static_cast<int>(
        std::count(available_mask.begin(), available_mask.end(), true));
    if (n == 0) {
        throw InfeasibleError("total capacity exhausted", 0.0);
    }

    TrafficWeights weights;
    weights.mode = Mode::CapacityOptimized;
    weights.entries.reserve(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        weights.entries.push_back(
            {catalog.units[i].id, available_mask[i] ? 1.0 / n : 0.0});
    }
    return weights;
}

TrafficWeights renormalize(const TrafficWeights& weights,
                           const std::vector<bool>& active_mask) {
    if (active_mask.size() != weights.entries.size()) {
        throw std::invalid_argument("mask size must match weight entries");
    }
    double active_sum = 0.0;
    for (std::size_t i = 0; i < weights.entries.size(); ++i) {
        if (active_mask[i]) active_sum += weights.entries[i].weight;
    }
    if (active_sum <= 0.0) {
        throw std::invalid_argument(
            "renormalize: no active unit carries weight");
    }

    TrafficWeights out = weights;
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        out.entries[i].weight =
            active_mask[i] ? out.entries[i].weight / active_sum : 0.0;
    }
    return out;
}

double target_throughput(const Catalog& catalog) {
    if (catalog.units.empty()) {
        throw std::invalid_argument("catalog must be non-empty");
    }
    double sum = 0.0;
    for (const auto& du : catalog.units) sum += du.max_throughput;
    return sum / static_cast<double>(catalog.size());
}

std::vector<double> adjusted_throughputs(const Catalog& catalog) {
    const double target = target_throughput(catalog);
    std::vector<double> adjusted(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        adjusted[i] = std::min(target, catalog.units[i].max_throughput);
    }
    return adjusted;
}

double supply_throughput(const TrafficWeights& weights,
                         std::span<const int> replicas,
                         const Catalog& catalog) {
    if (weights.entries.size() != catalog.size() ||
        replicas.size() != catalog.size()) {
        throw std::invalid_argument("weights/replicas must match catalog size");
    }
    double supply = 0.0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        supply += weights.entries[i].weight * catalog.units[i].max_throughput *
                  replicas[i];
    }
    return supply;
}

double avg_latency(const TrafficWeights& weights, const Catalog& catalog) {
    if (weights.entries.size() != catalog.size()) {
        throw std::invalid_argument("weights must match catalog size");
    }
    double latency = 0.0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        latency += weights.entries[i].weight * catalog.units[i].base_latency;
    }
    return latency;
}

AllocationPlan solve_allocation(double demand_rps, const Catalog& catalog,
                                std::span<const int> capacity,
                                SolveMethod method) {
    if (demand_rps < 0.0) {
        throw std::invalid_argument("demand must be >= 0");
    }
    if (capacity.size() != catalog.size()) {
        throw std::invalid_argument("capacity must match catalog size");
    }
    for (int c : capacity) {
        if (c < 0) throw std::invalid_argument("capacity must be >= 0");
    }
    check_feasible(demand_rps, catalog, capacity);

    if (method == SolveMethod::Greedy) {
        return make_plan(catalog, greedy_counts(demand_rps, catalog, capacity),
                         /*optimal=*/false);
    }

    std::vector<int> bounds(catalog.size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        bounds[i] = enumeration_bound(demand_rps,
                                      catalog.units[i].max_throughput,
                                      capacity[i]);
    }
    ExactSearch search{catalog, bounds, demand_rps,
                       std::vector<int>(catalog.size(), 0), {}};
    search.search(0, 0.0, 0.0, 0);
    return make_plan(catalog, search.best, /*optimal=*/true);
}

Mode select_mode(Mode current, const CapacityObservation& obs,
                 bool at_cycle_boundary) {
    if (obs.requested.size() != obs.available.size()) {
        throw std::invalid_argument("observation vectors must align");
    }
    for (std::size_t i = 0; i < obs.requested.size(); ++i) {
        if (obs.requested[i] > obs.available[i]) {
            return Mode::CapacityOptimized;
        }
    }
    if (current == Mode::CostOptimized) {
        // No shortfall: either the cost branch holds outright (supply covers
        // demand) or we hold the current mode, which is the same answer.
        return Mode::CostOptimized;
    }
    return at_cycle_boundary ? Mode::CostOptimized : Mode::CapacityOptimized;
}

}  // namespace orch
