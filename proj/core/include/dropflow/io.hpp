#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dropflow/diagnostics.hpp"
#include "dropflow/evolve.hpp"
#include "dropflow/inequalities.hpp"

namespace dropflow::io {

// Curve CSV: header "x,y", one component per block, blank line between
// components, first component outer. The reader infers hole flags by
// containment. Snapshot CSVs append kappa and v columns when available.
Boundary read_curve_csv(const std::filesystem::path& path);
void write_curve_csv(const std::filesystem::path& path, const Boundary& boundary);

// Snapshot with per-node curvature and normal velocity (columns x,y,kappa,v).
void write_snapshot_csv(const std::filesystem::path& path, const Boundary& boundary,
                        const BoundaryField* kappa, const BoundaryField* v);

// ScenarioConfig <-> JSON (all tolerances defaulted and overridable).
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& cfg);
ScenarioConfig read_config(const std::filesystem::path& path);

nlohmann::json record_to_json(const DiagnosticsRecord& rec);
nlohmann::json check_to_json(const IdentityCheckResult& c);
nlohmann::json row_to_json(const InequalityRow& r);

}  // namespace dropflow::io
