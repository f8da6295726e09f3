#pragma once

// Scenario JSON loading. The schema is strict: unknown keys anywhere in the
// document are a hard error, so experiment-config typos fail loudly.

#include <string>
#include <string_view>
#include <vector>

#include "orch/scenario.hpp"

namespace orch {

Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// Embedded reproductions of the reference experiments:
// "cost-optimized", "capacity-optimized", "failover".
const std::vector<std::string>& builtin_scenario_names();
bool is_builtin_scenario(std::string_view name);
std::string builtin_scenario_json(std::string_view name);

// Accepts a builtin name or a file path.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace orch
