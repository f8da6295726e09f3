#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "orch/catalog.hpp"
#include "orch/errors.hpp"
#include "test_support.hpp"

using orch::Catalog;
using orch::ValidationError;

namespace {

const char* kReferenceDoc = R"({
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
})";

}  // namespace

TEST_CASE("load_catalog parses the five-unit reference document in order") {
    const Catalog cat = orch::load_catalog(kReferenceDoc);
    REQUIRE(cat.size() == 5);
    CHECK(cat.units[0].id == "sd21-inf2");
    CHECK(cat.units[4].id == "sd21-g5-cuda");
    CHECK(cat.units[0].hardware_kind == orch::HardwareKind::NeuronInf2);
    CHECK(cat.units[2].framework == orch::Framework::Triton);
    CHECK(cat.units[4].execution_mode == orch::ExecutionMode::Eager);
}

TEST_CASE("defaults: utilization knee by hardware family, saturation level") {
    const Catalog cat = orch::load_catalog(kReferenceDoc);
    CHECK(cat.units[0].utilization_target == doctest::Approx(0.70));
    CHECK(cat.units[1].utilization_target == doctest::Approx(0.70));
    CHECK(cat.units[2].utilization_target == doctest::Approx(0.90));
    CHECK(cat.units[3].utilization_target == doctest::Approx(0.90));
    // breakpoint default 0.9 s, raised to 1.5x base when base >= 0.9
    CHECK(cat.units[0].breakpoint_latency == doctest::Approx(0.9));
    CHECK(cat.units[3].breakpoint_latency == doctest::Approx(1.44));
    CHECK(cat.units[4].breakpoint_latency == doctest::Approx(1.38));
}

TEST_CASE("empty unit list is rejected") {
    CHECK_THROWS_WITH_AS(orch::load_catalog(R"({"units": []})"),
                         "catalog must be non-empty", ValidationError);
}

TEST_CASE("duplicate id is rejected naming the id") {
    const char* doc = R"({
      "units": [
        {"id": "sd21-inf2", "model": "sd21", "hardware": "inf2",
         "framework": "neuron", "cost_per_hour": 0.7582,
         "max_throughput": 105, "base_latency": 0.67},
        {"id": "sd21-inf2", "model": "sd21", "hardware": "inf2",
         "framework": "neuron", "cost_per_hour": 0.7582,
         "max_throughput": 105, "base_latency": 0.67}
      ]
    })";
    CHECK_THROWS_WITH_AS(orch::load_catalog(doc),
                         doctest::Contains("sd21-inf2"), ValidationError);
}

TEST_CASE("validation names the offending unit and field") {
    const char* doc = R"({
      "units": [
        {"id": "bad-unit", "model": "m", "hardware": "inf2",
         "framework": "neuron", "cost_per_hour": -1.0,
         "max_throughput": 105, "base_latency": 0.67}
      ]
    })";
    try {
        orch::load_catalog(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad-unit") != std::string::npos);
        CHECK(msg.find("cost_per_hour") != std::string::npos);
    }
}

TEST_CASE("malformed json is a parse error") {
    CHECK_THROWS_AS(orch::load_catalog("{\"units\": ["), ValidationError);
}

TEST_CASE("unknown unit key is rejected") {
    const char* doc = R"({
      "units": [
        {"id": "u", "model": "m", "hardware": "inf2", "framework": "neuron",
         "cost_per_hour": 1, "max_throughput": 10, "base_latency": 0.5,
         "max_thrughput": 10}
      ]
    })";
    CHECK_THROWS_WITH_AS(orch::load_catalog(doc),
                         doctest::Contains("max_thrughput"), ValidationError);
}

TEST_CASE("cost_per_inference reference values") {
    // g5/g6 rows reproduce the published column to 4 decimals
    CHECK(orch::cost_per_inference(1.0060, 90.0) ==
          doctest::Approx(0.01118).epsilon(0.001));
    CHECK(orch::cost_per_inference(0.8048, 61.0) ==
          doctest::Approx(0.01320).epsilon(0.001));
    CHECK(orch::cost_per_inference(3600.0, 3600.0) == doctest::Approx(1.0));
}

TEST_CASE("cost_per_inference rejects non-positive input") {
    CHECK_THROWS_AS(orch::cost_per_inference(0.0, 10.0), std::domain_error);
    CHECK_THROWS_AS(orch::cost_per_inference(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(orch::cost_per_inference(-1.0, 10.0), std::domain_error);
}

TEST_CASE("cost_per_inference monotonicity and scale invariance") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> cost(0.1, 50.0);
    std::uniform_real_distribution<double> rps(1.0, 500.0);
    std::uniform_real_distribution<double> lambda(0.01, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double c = cost(rng);
        const double t = rps(rng);
        const double v = orch::cost_per_inference(c, t);
        CHECK(orch::cost_per_inference(c * 1.01, t) > v);
        CHECK(orch::cost_per_inference(c, t * 1.01) < v);
        const double l = lambda(rng);
        CHECK(orch::cost_per_inference(c * l, t * l) ==
              doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("catalog load/serialize round-trips field-for-field") {
    const Catalog a = orch::load_catalog(kReferenceDoc);
    const Catalog b = orch::load_catalog(orch::catalog_to_json(a));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.units[i].id == b.units[i].id);
        CHECK(a.units[i].model_name == b.units[i].model_name);
        CHECK(a.units[i].hardware_kind == b.units[i].hardware_kind);
        CHECK(a.units[i].hardware_label == b.units[i].hardware_label);
        CHECK(a.units[i].framework == b.units[i].framework);
        CHECK(a.units[i].framework_label == b.units[i].framework_label);
        CHECK(a.units[i].execution_mode == b.units[i].execution_mode);
        CHECK(a.units[i].cost_per_hour == b.units[i].cost_per_hour);
        CHECK(a.units[i].max_throughput == b.units[i].max_throughput);
        CHECK(a.units[i].base_latency == b.units[i].base_latency);
        CHECK(a.units[i].utilization_target == b.units[i].utilization_target);
        CHECK(a.units[i].breakpoint_latency == b.units[i].breakpoint_latency);
    }
}

TEST_CASE("unknown hardware maps to Other and keeps the label") {
    const char* doc = R"({
      "units": [
        {"id": "u", "model": "m", "hardware": "mi300",
         "framework": "rocm", "cost_per_hour": 2.0,
         "max_throughput": 80, "base_latency": 0.5}
      ]
    })";
    const Catalog cat = orch::load_catalog(doc);
    CHECK(cat.units[0].hardware_kind == orch::HardwareKind::Other);
    CHECK(cat.units[0].hardware_label == "mi300");
    CHECK(cat.units[0].framework == orch::Framework::Other);
    CHECK(cat.units[0].utilization_target == doctest::Approx(0.80));
}

TEST_CASE("index lookup") {
    const Catalog cat = testsupport::reference_catalog();
    CHECK(cat.index_of("sd21-trn1") == 1);
    CHECK(cat.index_of("nope") == -1);
    CHECK_THROWS_AS(cat.at("nope"), std::invalid_argument);
}
