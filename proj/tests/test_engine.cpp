#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "orch/breakpoint.hpp"
#include "orch/engine.hpp"
#include "orch/metrics_io.hpp"
#include "orch/scenario_io.hpp"
#include "test_support.hpp"

using orch::Engine;
using orch::Mode;
using orch::Scenario;
using testsupport::reference_catalog;

namespace {

Scenario steady_scenario(double rps, double duration = 300.0) {
    Scenario sc;
    sc.duration_s = duration;
    sc.dt = 1.0;
    sc.seed = 3;
    sc.catalog = reference_catalog();
    sc.demand.kind = orch::DemandKind::Sine;
    sc.demand.base_rps = rps;
    sc.demand.peak_rps = rps;
    sc.demand.cycle_s = duration;
    sc.demand.seed = sc.seed;
    sc.initial_available = {64, 64, 64, 64, 64};
    sc.provision_delay_s = 30.0;
    return sc;
}

}  // namespace

TEST_CASE("latency model: flat plateau then blow-up past the knee") {
    const orch::Catalog cat = reference_catalog();
    const auto& inf2 = cat.units[0];
    CHECK(orch::observed_latency(inf2, 0.0) == doctest::Approx(0.67));
    CHECK(orch::observed_latency(inf2, 0.5) == doctest::Approx(0.67));
    CHECK(orch::observed_latency(inf2, 0.7) == doctest::Approx(0.67));
    CHECK(orch::observed_latency(inf2, 0.9) ==
          doctest::Approx(1.34).epsilon(1e-9));
    // saturated: past the breakpoint for every catalog unit
    for (const auto& du : cat.units) {
        CHECK(orch::observed_latency(du, 1.0) > du.breakpoint_latency);
    }
    // kappa 0 disables the blow-up entirely
    CHECK(orch::observed_latency(inf2, 1.4, 0.0) == doctest::Approx(0.67));
}

TEST_CASE("steady demand below capacity: cost mode and zero errors throughout") {
    Engine engine(steady_scenario(200.0));
    const orch::TrafficWeights expected =
        orch::cost_weights(engine.scenario().catalog);
    for (int k = 0; k < 300; ++k) {
        const orch::MetricsSample s = engine.step();
        CHECK(s.mode == Mode::CostOptimized);
        CHECK(s.total_error_rps == 0.0);
        // with every unit active the weights are exactly the cost weights
        for (std::size_t i = 0; i < s.per_du.size(); ++i) {
            CHECK(s.per_du[i].weight ==
                  doctest::Approx(expected.entries[i].weight).epsilon(1e-12));
        }
        // cheapest unit carries the largest share
        for (std::size_t i = 1; i < s.per_du.size(); ++i) {
            CHECK(s.per_du[0].weight > s.per_du[i].weight);
        }
        for (std::size_t i = 0; i < s.per_du.size(); ++i) {
            const double cap = s.per_du[i].replicas *
                               engine.scenario().catalog.units[i].max_throughput;
            CHECK(s.per_du[i].success_rps <= cap + 1e-9);
        }
    }
}

TEST_CASE("zero demand: nothing served, nothing errored, no cost at min 0") {
    Scenario sc = steady_scenario(0.0, 120.0);
    const orch::RunResult result = orch::run_scenario(sc);
    CHECK(result.summary.total_served == 0.0);
    CHECK(result.summary.total_errored == 0.0);
    CHECK(result.summary.total_cost_usd == 0.0);
}

TEST_CASE("zero demand with a replica floor accrues exactly the floor's cost") {
    Scenario sc = steady_scenario(0.0, 360.0);
    sc.scaler.min_replicas = 1;
    const orch::RunResult result = orch::run_scenario(sc);
    double hourly = 0.0;
    for (const auto& du : sc.catalog.units) hourly += du.cost_per_hour;
    CHECK(result.summary.total_cost_usd ==
          doctest::Approx(hourly * 360.0 / 3600.0).epsilon(1e-9));
    CHECK(result.summary.total_served == 0.0);
    CHECK(result.summary.total_errored == 0.0);
}

TEST_CASE("failover: capacity mode within one control interval, weight drops to zero") {
    const Scenario sc = orch::resolve_scenario("failover");
    const orch::RunResult result = orch::run_scenario(sc);

    REQUIRE(result.summary.mode_switches.size() == 2);
    const auto& to_capacity = result.summary.mode_switches[0];
    const auto& to_cost = result.summary.mode_switches[1];

    const double event_at = sc.capacity_events[0].at;
    const double restore_at = sc.capacity_events[1].at;
    CHECK(to_capacity.from == Mode::CostOptimized);
    CHECK(to_capacity.to == Mode::CapacityOptimized);
    CHECK(to_capacity.t >= event_at);
    CHECK(to_capacity.t - event_at <= sc.controller.control_interval_s);

    CHECK(to_cost.from == Mode::CapacityOptimized);
    CHECK(to_cost.to == Mode::CostOptimized);
    CHECK(to_cost.t > restore_at);

    // reversion lands at a demand trough
    const double threshold =
        sc.demand.base_rps + 0.05 * (sc.demand.peak_rps - sc.demand.base_rps);
    CHECK(orch::demand_at(sc.demand, to_cost.t) < threshold);

    // while failed over, the lost unit receives no traffic
    for (const auto& sample : result.series) {
        if (sample.t > to_capacity.t && sample.t < restore_at) {
            CHECK(sample.per_du[0].weight == 0.0);
            CHECK(sample.mode == Mode::CapacityOptimized);
        }
    }
    CHECK(result.summary.error_fraction < 0.01);
}

TEST_CASE("per-step per-unit conservation: arrivals = served + errored + queue delta") {
    const Scenario sc = orch::resolve_scenario("failover");
    Engine engine(sc);
    std::vector<double> queue_before = engine.state().queue_depth;
    const long long steps =
        std::llround(sc.duration_s / sc.dt);
    for (long long k = 0; k < steps; ++k) {
        const orch::MetricsSample s = engine.step();
        const std::vector<double>& queue_after = engine.state().queue_depth;
        for (std::size_t i = 0; i < s.per_du.size(); ++i) {
            const double lhs = s.per_du[i].arrival_rps * sc.dt;
            const double rhs = s.per_du[i].success_rps * sc.dt +
                               s.per_du[i].error_rps * sc.dt +
                               (queue_after[i] - queue_before[i]);
            CHECK(std::abs(lhs - rhs) < 1e-9);
            CHECK(queue_after[i] >= 0.0);
        }
        queue_before = queue_after;
    }
}

TEST_CASE("cost accrual equals the granted-replica integral") {
    const Scenario sc = orch::resolve_scenario("failover");
    Engine engine(sc);
    double expected = 0.0;
    const long long steps = std::llround(sc.duration_s / sc.dt);
    for (long long k = 0; k < steps; ++k) {
        const orch::MetricsSample s = engine.step();
        for (std::size_t i = 0; i < s.per_du.size(); ++i) {
            expected += s.per_du[i].replicas *
                        sc.catalog.units[i].cost_per_hour * sc.dt / 3600.0;
        }
        CHECK(s.cost_usd_cum == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("halving dt moves cost and served volume by under 1%") {
    const Scenario coarse = orch::resolve_scenario("failover");
    Scenario fine = coarse;
    fine.dt = 0.5;
    REQUIRE(coarse.demand.noise_pct == 0.0);

    const orch::Summary a = orch::run_scenario(coarse).summary;
    const orch::Summary b = orch::run_scenario(fine).summary;
    CHECK(std::abs(a.total_cost_usd - b.total_cost_usd) <=
          0.01 * a.total_cost_usd);
    CHECK(std::abs(a.total_served - b.total_served) <= 0.01 * a.total_served);
}

TEST_CASE("identical scenario and seed produce byte-identical metrics") {
    const Scenario sc = orch::resolve_scenario("cost-optimized");
    const orch::RunResult a = orch::run_scenario(sc);
    const orch::RunResult b = orch::run_scenario(sc);
    CHECK(orch::metrics_csv_string(sc.catalog, a.series) ==
          orch::metrics_csv_string(sc.catalog, b.series));
}

TEST_CASE("different seeds diverge under noise") {
    Scenario sc = orch::resolve_scenario("cost-optimized");
    REQUIRE(sc.demand.noise_pct > 0.0);
    Scenario other = sc;
    other.seed = sc.seed + 1;
    other.demand.seed = other.seed;
    const orch::RunResult a = orch::run_scenario(sc);
    const orch::RunResult b = orch::run_scenario(other);
    CHECK(orch::metrics_csv_string(sc.catalog, a.series) !=
          orch::metrics_csv_string(other.catalog, b.series));
}

TEST_CASE("breakpoint sweep: plateau at max throughput, crossing past the knee") {
    const orch::Catalog cat = reference_catalog();
    for (const auto& du : cat.units) {
        const orch::BreakpointResult result = orch::breakpoint_sweep(du, 0.5);
        REQUIRE(result.rows.size() >= 51);

        double prev = -1.0;
        double plateau_from = -1.0;
        for (const auto& row : result.rows) {
            CHECK(row.served_rps >= prev - 1e-12);  // non-decreasing
            prev = row.served_rps;
            CHECK(row.served_rps <= du.max_throughput + 1e-9);
            if (plateau_from < 0.0 &&
                std::abs(row.served_rps - du.max_throughput) < 1e-6) {
                plateau_from = row.offered_rps;
            }
        }
        CHECK(result.rows.back().served_rps ==
              doctest::Approx(du.max_throughput).epsilon(1e-12));

        REQUIRE(result.found);
        // first crossing sits strictly past the knee's load level, where the
        // flat base-latency plateau has already ended
        CHECK(result.breakpoint_rps >
              du.utilization_target * du.max_throughput);
        CHECK(result.breakpoint_latency_s > du.breakpoint_latency);
    }
}

TEST_CASE("breakpoint sweep with kappa 0 finds no breakpoint") {
    const orch::Catalog cat = reference_catalog();
    const orch::BreakpointResult result =
        orch::breakpoint_sweep(cat.units[0], 0.0);
    CHECK(!result.found);
    for (const auto& row : result.rows) {
        CHECK(row.latency_s == doctest::Approx(0.67));
    }
}

TEST_CASE("breakpoint sweep is deterministic") {
    const orch::Catalog cat = reference_catalog();
    const auto a = orch::breakpoint_sweep(cat.units[2], 0.5);
    const auto b = orch::breakpoint_sweep(cat.units[2], 0.5);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].offered_rps == b.rows[i].offered_rps);
        CHECK(a.rows[i].latency_s == b.rows[i].latency_s);
    }
}

TEST_CASE("forced capacity mode approaches the adjusted throughput column") {
    const Scenario sc = orch::resolve_scenario("capacity-optimized");
    const orch::RunResult result = orch::run_scenario(sc);
    const std::vector<double> expected = {89.2, 89.2, 89.2, 61.0, 60.0};
    const auto& last = result.series.back();
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(last.per_du[i].success_rps ==
              doctest::Approx(expected[i]).epsilon(1e-6));
        CHECK(last.per_du[i].weight == doctest::Approx(0.2));
        // uniform fluid split of 446 rps
        CHECK(last.per_du[i].arrival_rps ==
              doctest::Approx(89.2).epsilon(1e-9));
    }
}
