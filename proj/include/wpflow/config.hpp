#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpflow/literal.hpp"
#include "wpflow/semmes.hpp"

namespace wpflow {

struct ConfigSpec {
  // line functions
  double line_half_width = 16.0;
  double line_step = 1.0 / 64.0;
  double diag_cutoff = 1.0 / 64.0;
  // circle functions
  std::size_t circle_samples = 1024;
  int bmo_depth = kDefaultBmoDepth;
  // half-plane grid shared by semmes and reich
  GridSpec grid{};
  // flows
  std::size_t flow_steps = 1000;
  std::size_t flow_particles = 512;
  // reich
  double boundary_step = 1.0 / 512.0;
  double smallness_threshold = 0.3;
  std::string suite = "all";
  unsigned workers = 0;
  std::map<std::string, double> tolerances;

  double tolerance(const std::string& name) const;
  LiteralOptions literal_options() const;
};

/// Every named tolerance with its default.
const std::map<std::string, double>& default_tolerances();

ConfigSpec default_config();

/// Missing keys take defaults; unknown keys and non-positive values are parse
/// or invalid-input errors. Tolerances below machine epsilon are accepted and
/// reported through `warnings`.
ConfigSpec config_from_json(const json& j, std::vector<std::string>* warnings = nullptr);
ConfigSpec load_config(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Full config including every default.
json config_to_json(const ConfigSpec& c);

/// FNV-1a (64 bit) of the compact JSON echo, as 16 hex digits.
std::string config_hash(const ConfigSpec& c);

}  // namespace wpflow
