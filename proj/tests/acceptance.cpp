// Runs the full verification battery twice and reports one line per
// acceptance criterion.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

#include "wpflow/manifest.hpp"
#include "wpflow/verify.hpp"

using namespace wpflow;

namespace {

const std::map<int, std::string> kCriteria = {
    {1, "circle seminorm cross-validation"},
    {2, "BMO comparability ratio"},
    {3, "kernel vs finite-difference Wirtinger"},
    {4, "Beltrami energy scaling"},
    {5, "Fubini identity"},
    {6, "flow closed form and self-convergence"},
    {7, "log-derivative ODE residuals"},
    {8, "flow equals Psi of its log-derivative"},
    {9, "d Psi calculus"},
    {10, "intertwining of translations"},
    {11, "dbar H identity"},
    {12, "analytic family witness"},
    {13, "energy chain constant"},
    {14, "determinism"},
};

RunManifest run_all(const ConfigSpec& cfg) {
  RunManifest m = start_manifest(cfg);
  auto r = run_suite("all", cfg);
  m.rows = std::move(r.rows);
  m.warnings = std::move(r.warnings);
  return m;
}

}  // namespace

int main() {
  const ConfigSpec cfg = default_config();
  const auto t0 = std::chrono::steady_clock::now();
  const RunManifest first = run_all(cfg);
  const RunManifest second = run_all(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto dir = std::filesystem::temp_directory_path() / "wpflow_acceptance";
  write_manifest(first, dir.string(), "json");

  bool ok = true;
  for (const auto& [id, name] : kCriteria) {
    bool pass = true;
    int rows = 0;
    std::string detail;
    if (id == 14) {
      json a = manifest_to_json(first), b = manifest_to_json(second);
      a.erase("timestamp");
      b.erase("timestamp");
      pass = a.dump() == b.dump();
      rows = static_cast<int>(first.rows.size());
      detail = pass ? "manifests identical apart from the timestamp" : "manifests differ";
    } else {
      for (const auto& r : first.rows) {
        if (r.criterion != id) continue;
        ++rows;
        if (!r.pass) {
          pass = false;
          char buf[256];
          std::snprintf(buf, sizeof buf, "%s [%s] residual %.3e > %.3e; ", r.operation.c_str(), r.input.c_str(),
                        r.residual, r.tolerance);
          detail += buf;
        }
      }
      if (rows == 0) {
        pass = false;
        detail = "no rows";
      }
    }
    ok = ok && pass;
    std::printf("%s criterion %2d: %s (%d rows)%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), rows,
                detail.empty() ? "" : " - ", detail.c_str());
  }
  std::printf("all rows pass: %s; %zu rows; two runs in %.1f s; manifest %s\n", first.all_pass() ? "yes" : "no",
              first.rows.size(), seconds, (dir / "manifest.json").string().c_str());
  for (const auto& w : first.warnings) std::printf("warning: %s\n", w.c_str());
  return ok && first.all_pass() ? 0 : 1;
}
