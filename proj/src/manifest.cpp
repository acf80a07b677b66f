#include "wpflow/manifest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace wpflow {

CheckRow make_row(std::string suite, std::string operation, std::string input, double value,
                  double residual, double tolerance, int criterion) {
  CheckRow r;
  r.suite = std::move(suite);
  r.operation = std::move(operation);
  r.input = std::move(input);
  r.value = value;
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  r.criterion = criterion;
  return r;
}

bool RunManifest::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json environment_metadata() {
  json e;
#if defined(__clang__)
  e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  e["compiler"] = std::string("gcc ") + __VERSION__;
#else
  e["compiler"] = "unknown";
#endif
  e["cxx_standard"] = static_cast<long>(__cplusplus);
#if defined(__linux__)
  e["platform"] = "linux";
#elif defined(__APPLE__)
  e["platform"] = "darwin";
#else
  e["platform"] = "other";
#endif
  e["workers"] = worker_count();
  e["double_epsilon"] = std::numeric_limits<double>::epsilon();
  return e;
}

RunManifest start_manifest(const ConfigSpec& config) {
  RunManifest m;
  m.timestamp = utc_timestamp();
  m.config_hash = config_hash(config);
  m.config = config_to_json(config);
  m.environment = environment_metadata();
  return m;
}

namespace {

// Shortest round-trip text for a double; non-finite values spelled out.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();
}

json num_json(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json row_to_json(const CheckRow& r) {
  return {{"suite", r.suite},         {"operation", r.operation},    {"input", r.input},
          {"criterion", r.criterion}, {"value", num_json(r.value)},  {"residual", num_json(r.residual)},
          {"tolerance", num_json(r.tolerance)}, {"pass", r.pass}};
}

json manifest_to_json(const RunManifest& m) {
  json rows = json::array();
  for (const auto& r : m.rows) rows.push_back(row_to_json(r));
  return {{"timestamp", m.timestamp}, {"config_hash", m.config_hash}, {"config", m.config},
          {"environment", m.environment}, {"warnings", m.warnings},   {"all_pass", m.all_pass()},
          {"rows", rows}};
}

void write_rows_csv(const std::vector<CheckRow>& rows, std::ostream& os) {
  os << "suite,operation,input,criterion,value,residual,tolerance,pass\n";
  for (const auto& r : rows) {
    os << csv_field(r.suite) << ',' << csv_field(r.operation) << ',' << csv_field(r.input) << ','
       << r.criterion << ',' << num(r.value) << ',' << num(r.residual) << ',' << num(r.tolerance) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
}

void write_manifest_csv(const RunManifest& m, std::ostream& os) {
  os << "# timestamp: " << m.timestamp << '\n';
  os << "# config_hash: " << m.config_hash << '\n';
  os << "# config: " << m.config.dump() << '\n';
  os << "# environment: " << m.environment.dump() << '\n';
  for (const auto& w : m.warnings) os << "# warning: " << w << '\n';
  write_rows_csv(m.rows, os);
}

std::string write_manifest(const RunManifest& m, const std::string& dir, const std::string& format) {
  std::filesystem::create_directories(dir);
  const bool csv = format == "csv";
  const std::string path = (std::filesystem::path(dir) / (csv ? "manifest.csv" : "manifest.json")).string();
  std::ofstream out(path);
  if (!out) fail(ErrorKind::invalid_input, "cannot write " + path);
  if (csv) {
    write_manifest_csv(m, out);
  } else {
    out << manifest_to_json(m).dump(2) << '\n';
  }
  return path;
}

}  // namespace wpflow
