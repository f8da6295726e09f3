#include "orch/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "orch/errors.hpp"

namespace orch {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ValidationError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
        throw ValidationError(where + ": field '" + key + "' must be a number");
    }
    return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& key, int fallback,
           const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) {
        throw ValidationError(where + ": field '" + key +
                              "' must be an integer");
    }
    return obj[key].get<int>();
}

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
    if (!obj.contains(key)) {
        throw ValidationError(where + ": missing required field '" + key + "'");
    }
    return number_or(obj, key, 0.0, where);
}

DemandTrace parse_demand(const json& node) {
    const std::string where = "demand";
    if (!node.is_object()) {
        throw ValidationError(where + ": must be an object");
    }
    require_keys(node,
                 {"kind", "base_rps", "peak_rps", "cycle", "noise_pct",
                  "points"},
                 where);

    DemandTrace trace;
    std::string kind = "sine";
    if (node.contains("kind")) {
        if (!node["kind"].is_string()) {
            throw ValidationError(where + ": 'kind' must be a string");
        }
        kind = node["kind"].get<std::string>();
    }
    if (kind == "sine") {
        trace.kind = DemandKind::Sine;
    } else if (kind == "trapezoid") {
        trace.kind = DemandKind::Trapezoid;
    } else if (kind == "table") {
        trace.kind = DemandKind::PiecewiseTable;
    } else {
        throw ValidationError(
            where + ": kind must be 'sine', 'trapezoid', or 'table'");
    }

    trace.cycle_s = require_number(node, "cycle", where);
    trace.noise_pct = number_or(node, "noise_pct", 0.0, where);

    if (trace.kind == DemandKind::PiecewiseTable) {
        if (!node.contains("points") || !node["points"].is_array()) {
            throw ValidationError(where +
                                  ": table trace needs a 'points' array");
        }
        double lo = 0.0;
        double hi = 0.0;
        bool first = true;
        for (const auto& p : node["points"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
                !p[1].is_number()) {
                throw ValidationError(
                    where + ": each point must be a [t, rps] number pair");
            }
            const DemandPoint point{p[0].get<double>(), p[1].get<double>()};
            trace.points.push_back(point);
            lo = first ? point.rps : std::min(lo, point.rps);
            hi = first ? point.rps : std::max(hi, point.rps);
            first = false;
        }
        // table traces derive their envelope from the data
        trace.base_rps = lo;
        trace.peak_rps = hi;
    } else {
        if (node.contains("points")) {
            throw ValidationError(where +
                                  ": 'points' only applies to table traces");
        }
        trace.base_rps = require_number(node, "base_rps", where);
        trace.peak_rps = require_number(node, "peak_rps", where);
    }
    return trace;
}

ControllerConfig parse_controller(const json& node) {
    const std::string where = "controller";
    ControllerConfig config;
    if (node.is_null()) return config;
    if (!node.is_object()) {
        throw ValidationError(where + ": must be an object");
    }
    require_keys(node, {"control_interval", "mode"}, where);
    config.control_interval_s =
        number_or(node, "control_interval", config.control_interval_s, where);
    if (node.contains("mode")) {
        if (!node["mode"].is_string()) {
            throw ValidationError(where + ": 'mode' must be a string");
        }
        const std::string mode = node["mode"].get<std::string>();
        if (mode == "auto") {
            config.mode = ControllerMode::Auto;
        } else if (mode == "force_cost") {
            config.mode = ControllerMode::ForceCost;
        } else if (mode == "force_capacity") {
            config.mode = ControllerMode::ForceCapacity;
        } else {
            throw ValidationError(
                where +
                ": mode must be 'auto', 'force_cost', or 'force_capacity'");
        }
    }
    return config;
}

ScalerConfig parse_scaler(const json& node) {
    const std::string where = "scaler";
    ScalerConfig config;
    if (node.is_null()) return config;
    if (!node.is_object()) {
        throw ValidationError(where + ": must be an object");
    }
    require_keys(node,
                 {"cooldown_up", "cooldown_down", "min_replicas",
                  "max_replicas"},
                 where);
    config.cooldown_up_s =
        number_or(node, "cooldown_up", config.cooldown_up_s, where);
    config.cooldown_down_s =
        number_or(node, "cooldown_down", config.cooldown_down_s, where);
    config.min_replicas =
        int_or(node, "min_replicas", config.min_replicas, where);
    config.max_replicas =
        int_or(node, "max_replicas", config.max_replicas, where);
    return config;
}

}  // namespace

Scenario load_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("scenario document must be an object");
    }
    require_keys(doc,
                 {"duration", "dt", "seed", "catalog", "demand",
                  "capacity_events", "controller", "scaler", "pool",
                  "provision_delay", "queue_seconds", "latency_kappa"},
                 "scenario");

    Scenario sc;
    sc.duration_s = require_number(doc, "duration", "scenario");
    sc.dt = require_number(doc, "dt", "scenario");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() &&
            !doc["seed"].is_number_integer()) {
            throw ValidationError("scenario: 'seed' must be an integer");
        }
        sc.seed = doc["seed"].get<std::uint64_t>();
    }

    if (!doc.contains("catalog")) {
        throw ValidationError("scenario: missing required field 'catalog'");
    }
    sc.catalog = load_catalog(doc["catalog"].dump());

    if (!doc.contains("demand")) {
        throw ValidationError("scenario: missing required field 'demand'");
    }
    sc.demand = parse_demand(doc["demand"]);
    sc.demand.seed = sc.seed;

    if (doc.contains("capacity_events")) {
        if (!doc["capacity_events"].is_array()) {
            throw ValidationError("capacity_events: must be an array");
        }
        for (const auto& node : doc["capacity_events"]) {
            require_keys(node, {"at", "du_id", "new_available"},
                         "capacity_events");
            CapacityEvent ev;
            ev.at = require_number(node, "at", "capacity_events");
            if (!node.contains("du_id") || !node["du_id"].is_string()) {
                throw ValidationError(
                    "capacity_events: 'du_id' must be a string");
            }
            ev.du_id = node["du_id"].get<std::string>();
            if (!node.contains("new_available")) {
                throw ValidationError(
                    "capacity_events: missing required field 'new_available'");
            }
            ev.new_available =
                int_or(node, "new_available", 0, "capacity_events");
            sc.capacity_events.push_back(std::move(ev));
        }
    }

    sc.controller = parse_controller(doc.contains("controller")
                                         ? doc["controller"]
                                         : json());
    sc.scaler = parse_scaler(doc.contains("scaler") ? doc["scaler"] : json());

    // pool: per-unit initial availability; unlisted units get the scaler max
    sc.initial_available.assign(sc.catalog.size(), sc.scaler.max_replicas);
    if (doc.contains("pool")) {
        if (!doc["pool"].is_object()) {
            throw ValidationError("pool: must be an object of {du_id: count}");
        }
        for (auto it = doc["pool"].begin(); it != doc["pool"].end(); ++it) {
            const int i = sc.catalog.index_of(it.key());
            if (i < 0) {
                throw ValidationError("pool: unknown du_id '" + it.key() +
                                      "'");
            }
            if (!it.value().is_number_integer()) {
                throw ValidationError("pool: '" + it.key() +
                                      "' must be an integer");
            }
            sc.initial_available[static_cast<std::size_t>(i)] =
                it.value().get<int>();
        }
    }

    sc.provision_delay_s =
        number_or(doc, "provision_delay", sc.provision_delay_s, "scenario");
    sc.queue_seconds =
        number_or(doc, "queue_seconds", sc.queue_seconds, "scenario");
    sc.latency_kappa =
        number_or(doc, "latency_kappa", sc.latency_kappa, "scenario");

    validate_scenario(sc);
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_scenario(buffer.str());
}

Scenario resolve_scenario(const std::string& name_or_path) {
    if (is_builtin_scenario(name_or_path)) {
        return load_scenario(builtin_scenario_json(name_or_path));
    }
    return load_scenario_file(name_or_path);
}

}  // namespace orch
