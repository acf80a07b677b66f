#pragma once

#include <string>
#include <vector>

#include "wpflow/config.hpp"
#include "wpflow/manifest.hpp"

namespace wpflow {

struct SuiteResult {
  std::vector<CheckRow> rows;
  std::vector<std::string> warnings;
};

/// functions, mollifier, semmes, flow, wpmap, reich
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite in order for "all". Unknown names are
/// invalid-input errors.
SuiteResult run_suite(const std::string& name, const ConfigSpec& config);

}  // namespace wpflow
