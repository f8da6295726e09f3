#include "orch/catalog.hpp"

#include <set>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "orch/errors.hpp"

namespace orch {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

HardwareKind parse_hardware(const std::string& token) {
    if (token == "inf2") return HardwareKind::NeuronInf2;
    if (token == "trn1") return HardwareKind::NeuronTrn1;
    if (token == "a10g") return HardwareKind::NvidiaA10G;
    if (token == "l4") return HardwareKind::NvidiaL4;
    return HardwareKind::Other;
}

Framework parse_framework(const std::string& token) {
    if (token == "neuron") return Framework::Neuron;
    if (token == "triton") return Framework::Triton;
    if (token == "cuda") return Framework::Cuda;
    return Framework::Other;
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ValidationError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

double get_number(const json& obj, const std::string& key,
                  const std::string& where) {
    if (!obj.contains(key)) {
        throw ValidationError(where + ": missing required field '" + key + "'");
    }
    if (!obj[key].is_number()) {
        throw ValidationError(where + ": field '" + key + "' must be a number");
    }
    return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& where) {
    if (!obj.contains(key)) {
        throw ValidationError(where + ": missing required field '" + key + "'");
    }
    if (!obj[key].is_string()) {
        throw ValidationError(where + ": field '" + key + "' must be a string");
    }
    return obj[key].get<std::string>();
}

DeploymentUnitSpec parse_unit(const json& node, std::size_t position) {
    const std::string where = "catalog unit #" + std::to_string(position);
    if (!node.is_object()) {
        throw ValidationError(where + ": must be an object");
    }
    require_keys(node,
                 {"id", "model", "hardware", "framework", "execution_mode",
                  "cost_per_hour", "max_throughput", "base_latency",
                  "utilization_target", "breakpoint_latency"},
                 where);

    DeploymentUnitSpec du;
    du.id = get_string(node, "id", where);
    const std::string here = "catalog unit '" + du.id + "'";
    du.model_name = get_string(node, "model", here);
    du.hardware_label = get_string(node, "hardware", here);
    du.hardware_kind = parse_hardware(du.hardware_label);
    du.framework_label = get_string(node, "framework", here);
    du.framework = parse_framework(du.framework_label);

    if (node.contains("execution_mode")) {
        const std::string mode = get_string(node, "execution_mode", here);
        if (mode == "eager") {
            du.execution_mode = ExecutionMode::Eager;
        } else if (mode == "graph") {
            du.execution_mode = ExecutionMode::Graph;
        } else {
            throw ValidationError(here +
                                  ": execution_mode must be 'eager' or 'graph'");
        }
    }

    du.cost_per_hour = get_number(node, "cost_per_hour", here);
    du.max_throughput = get_number(node, "max_throughput", here);
    du.base_latency = get_number(node, "base_latency", here);
    du.utilization_target =
        node.contains("utilization_target")
            ? get_number(node, "utilization_target", here)
            : default_utilization_target(du.hardware_kind);
    du.breakpoint_latency =
        node.contains("breakpoint_latency")
            ? get_number(node, "breakpoint_latency", here)
            : default_breakpoint_latency(du.base_latency);
    return du;
}

}  // namespace

std::string to_string(HardwareKind kind) {
    switch (kind) {
        case HardwareKind::NeuronInf2: return "inf2";
        case HardwareKind::NeuronTrn1: return "trn1";
        case HardwareKind::NvidiaA10G: return "a10g";
        case HardwareKind::NvidiaL4: return "l4";
        case HardwareKind::Other: return "other";
    }
    return "other";
}

std::string to_string(Framework fw) {
    switch (fw) {
        case Framework::Neuron: return "neuron";
        case Framework::Triton: return "triton";
        case Framework::Cuda: return "cuda";
        case Framework::Other: return "other";
    }
    return "other";
}

std::string to_string(ExecutionMode mode) {
    return mode == ExecutionMode::Eager ? "eager" : "graph";
}

int Catalog::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (units[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

const DeploymentUnitSpec& Catalog::at(std::string_view id) const {
    const int i = index_of(id);
    if (i < 0) {
        throw std::invalid_argument("unknown deployment unit '" +
                                    std::string(id) + "'");
    }
    return units[static_cast<std::size_t>(i)];
}

double default_utilization_target(HardwareKind kind) {
    switch (kind) {
        case HardwareKind::NeuronInf2:
        case HardwareKind::NeuronTrn1:
            return 0.70;
        case HardwareKind::NvidiaA10G:
        case HardwareKind::NvidiaL4:
            return 0.90;
        case HardwareKind::Other:
            return 0.80;
    }
    return 0.80;
}

double default_breakpoint_latency(double base_latency) {
    constexpr double kDefault = 0.9;
    return kDefault > base_latency ? kDefault : 1.5 * base_latency;
}

double cost_per_inference(double cost_per_hour, double max_throughput) {
    if (cost_per_hour <= 0.0) {
        throw std::domain_error("cost_per_hour must be > 0");
    }
    if (max_throughput <= 0.0) {
        throw std::domain_error("max_throughput must be > 0");
    }
    return cost_per_hour / max_throughput;
}

double cost_per_inference(const DeploymentUnitSpec& du) {
    return cost_per_inference(du.cost_per_hour, du.max_throughput);
}

void validate_catalog(const Catalog& catalog) {
    if (catalog.units.empty()) {
        throw ValidationError("catalog must be non-empty");
    }
    std::set<std::string> seen;
    for (const auto& du : catalog.units) {
        const std::string here = "catalog unit '" + du.id + "'";
        if (du.id.empty()) {
            throw ValidationError("catalog unit with empty id");
        }
        if (!seen.insert(du.id).second) {
            throw ValidationError("duplicate deployment unit id '" + du.id +
                                  "'");
        }
        if (du.cost_per_hour <= 0.0) {
            throw ValidationError(here + ": cost_per_hour must be > 0");
        }
        if (du.max_throughput <= 0.0) {
            throw ValidationError(here + ": max_throughput must be > 0");
        }
        if (du.base_latency <= 0.0) {
            throw ValidationError(here + ": base_latency must be > 0");
        }
        if (du.utilization_target <= 0.0 || du.utilization_target > 1.0) {
            throw ValidationError(here +
                                  ": utilization_target must be in (0, 1]");
        }
        if (du.breakpoint_latency <= 0.0) {
            throw ValidationError(here + ": breakpoint_latency must be > 0");
        }
    }
}

Catalog load_catalog(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("catalog parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("catalog document must be an object");
    }
    require_keys(doc, {"units"}, "catalog");
    if (!doc.contains("units") || !doc["units"].is_array()) {
        throw ValidationError("catalog: 'units' must be an array");
    }

    Catalog catalog;
    std::size_t position = 0;
    for (const auto& node : doc["units"]) {
        catalog.units.push_back(parse_unit(node, position++));
    }
    validate_catalog(catalog);
    return catalog;
}

std::string catalog_to_json(const Catalog& catalog) {
    ordered_json units = ordered_json::array();
    for (const auto& du : catalog.units) {
        ordered_json node;
        node["id"] = du.id;
        node["model"] = du.model_name;
        node["hardware"] = du.hardware_label;
        node["framework"] = du.framework_label;
        node["execution_mode"] = to_string(du.execution_mode);
        node["cost_per_hour"] = du.cost_per_hour;
        node["max_throughput"] = du.max_throughput;
        node["base_latency"] = du.base_latency;
        node["utilization_target"] = du.utilization_target;
        node["breakpoint_latency"] = du.breakpoint_latency;
        units.push_back(std::move(node));
    }
    ordered_json doc;
    doc["units"] = std::move(units);
    return doc.dump(2);
}

}  // namespace orch
