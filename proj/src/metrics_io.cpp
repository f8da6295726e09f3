#include "orch/metrics_io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace orch {

std::string format_float(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string metrics_csv_header(const Catalog& catalog) {
    std::string header = "t,mode";
    static const char* kFields[] = {"weight",      "replicas",  "available",
                                    "arrival_rps", "success_rps", "error_rps",
                                    "latency_s",   "utilization"};
    for (const auto& du : catalog.units) {
        for (const char* field : kFields) {
            header += ',';
            header += du.id;
            header += '.';
            header += field;
        }
    }
    header += ",total_success_rps,total_error_rps,cost_usd_cum";
    return header;
}

void write_metrics_csv(std::ostream& out, const Catalog& catalog,
                       const std::vector<MetricsSample>& series) {
    out << metrics_csv_header(catalog) << '\n';
    for (const auto& sample : series) {
        out << format_float(sample.t) << ',' << to_string(sample.mode);
        for (const auto& du : sample.per_du) {
            out << ',' << format_float(du.weight) << ',' << du.replicas << ','
                << du.available << ',' << format_float(du.arrival_rps) << ','
                << format_float(du.success_rps) << ','
                << format_float(du.error_rps) << ','
                << format_float(du.latency_s) << ','
                << format_float(du.utilization);
        }
        out << ',' << format_float(sample.total_success_rps) << ','
            << format_float(sample.total_error_rps) << ','
            << format_float(sample.cost_usd_cum) << '\n';
    }
}

std::string metrics_csv_string(const Catalog& catalog,
                               const std::vector<MetricsSample>& series) {
    std::ostringstream out;
    write_metrics_csv(out, catalog, series);
    return out.str();
}

void write_summary_json(std::ostream& out, const Catalog& catalog,
                        const Summary& summary) {
    nlohmann::ordered_json doc;
    doc["total_cost_usd"] = summary.total_cost_usd;
    doc["total_arrived"] = summary.total_arrived;
    doc["total_served"] = summary.total_served;
    doc["total_errored"] = summary.total_errored;
    doc["error_fraction"] = summary.error_fraction;

    nlohmann::ordered_json latency;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        latency[catalog.units[i].id] = summary.mean_latency_s[i];
    }
    doc["mean_latency_s"] = std::move(latency);

    nlohmann::ordered_json switches = nlohmann::ordered_json::array();
    for (const auto& sw : summary.mode_switches) {
        nlohmann::ordered_json node;
        node["t"] = sw.t;
        node["from"] = to_string(sw.from);
        node["to"] = to_string(sw.to);
        switches.push_back(std::move(node));
    }
    doc["mode_switches"] = std::move(switches);

    out << doc.dump(2) << '\n';
}

std::string summary_json_string(const Catalog& catalog,
                                const Summary& summary) {
    std::ostringstream out;
    write_summary_json(out, catalog, summary);
    return out.str();
}

}  // namespace orch
