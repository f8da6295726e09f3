#pragma once

// Machine-readable outputs: metrics.csv (schema-stable, 6 significant
// digits, newline-terminated rows) and summary.json.

#include <ostream>
#include <string>

#include "orch/engine.hpp"

namespace orch {

// Fixed float formatting for all emitted numbers: %.6g.
std::string format_float(double v);

std::string metrics_csv_header(const Catalog& catalog);
void write_metrics_csv(std::ostream& out, const Catalog& catalog,
                       const std::vector<MetricsSample>& series);
std::string metrics_csv_string(const Catalog& catalog,
                               const std::vector<MetricsSample>& series);

void write_summary_json(std::ostream& out, const Catalog& catalog,
                        const Summary& summary);
std::string summary_json_string(const Catalog& catalog,
                                const Summary& summary);

}  // namespace orch
