#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpflow/config.hpp"

namespace wpflow {

struct CheckRow {
  std::string suite;
  std::string operation;
  std::string input;
  double value = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Acceptance criterion number, 0 when the row belongs to none.
  int criterion = 0;
};

/// pass = residual is finite and residual <= tolerance.
CheckRow make_row(std::string suite, std::string operation, std::string input, double value,
                  double residual, double tolerance, int criterion = 0);

struct RunManifest {
  std::string timestamp;
  std::string config_hash;
  json config;
  json environment;
  std::vector<std::string> warnings;
  std::vector<CheckRow> rows;

  bool all_pass() const;
};

RunManifest start_manifest(const ConfigSpec& config);

json environment_metadata();
std::string utc_timestamp();

json row_to_json(const CheckRow& row);
json manifest_to_json(const RunManifest& m);

/// Header: suite,operation,input,criterion,value,residual,tolerance,pass
void write_rows_csv(const std::vector<CheckRow>& rows, std::ostream& os);
/// Manifest fields as "# key: value" comment lines, then the rows.
void write_manifest_csv(const RunManifest& m, std::ostream& os);

/// Writes manifest.json or manifest.csv under dir (created if needed) and
/// returns the path.
std::string write_manifest(const RunManifest& m, const std::string& dir, const std::string& format);

}  // namespace wpflow
