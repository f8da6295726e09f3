#pragma once

// Deployment-unit catalog: the static economics of every (model, hardware,
// framework) serving option — hourly cost, breakpoint throughput, base
// latency, and the autoscaler knee.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orch {

enum class HardwareKind { NeuronInf2, NeuronTrn1, NvidiaA10G, NvidiaL4, Other };
enum class Framework { Neuron, Triton, Cuda, Other };
enum class ExecutionMode { Eager, Graph };

std::string to_string(HardwareKind kind);
std::string to_string(Framework fw);
std::string to_string(ExecutionMode mode);

// One deployable serving option on a single accelerator device.
struct DeploymentUnitSpec {
    std::string id;
    std::string model_name;
    HardwareKind hardware_kind = HardwareKind::Other;
    std::string hardware_label;  // raw config token; display name for Other
    Framework framework = Framework::Other;
    std::string framework_label;
    ExecutionMode execution_mode = ExecutionMode::Graph;
    double cost_per_hour = 0.0;       // USD/hr per replica, > 0
    double max_throughput = 0.0;      // requests/s at the breakpoint, > 0
    double base_latency = 0.0;        // s/request under light load, > 0
    double utilization_target = 0.0;  // autoscaler knee, (0, 1]
    double breakpoint_latency = 0.0;  // s; latency level declaring saturation
};

// Ordered unit list. Order is the deterministic tie-break priority for
// weight and solver ties.
struct Catalog {
    std::vector<DeploymentUnitSpec> units;

    std::size_t size() const { return units.size(); }
    // Index in catalog order, or -1 when the id is unknown.
    int index_of(std::string_view id) const;
    const DeploymentUnitSpec& at(std::string_view id) const;
};

// Defaults filled in when the config omits the field.
double default_utilization_target(HardwareKind kind);
// 0.9 s, raised to 1.5x base latency for units whose base latency already
// sits at or above 0.9 s (saturation must stay detectable).
double default_breakpoint_latency(double base_latency);

// USD per request-second of capacity: cost_per_hour / max_throughput.
// Throws std::domain_error on non-positive input.
double cost_per_inference(double cost_per_hour, double max_throughput);
double cost_per_inference(const DeploymentUnitSpec& du);

// Throws ValidationError naming the unit and field on any violation.
void validate_catalog(const Catalog& catalog);

// Parses a JSON catalog document: {"units": [...]} . Unknown keys are a
// hard error. Preserves document order.
Catalog load_catalog(const std::string& json_text);

// Inverse of load_catalog; all fields are written explicitly so a
// load/serialize cycle round-trips field-for-field.
std::string catalog_to_json(const Catalog& catalog);

}  // namespace orch
