#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("wpflow_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  return q + "'";
}

Run run(const std::string& args) {
  const auto o = scratch() / "stdout.txt";
  const auto e = scratch() / "stderr.txt";
  const std::string cmd = std::string(WPFLOW_CLI_PATH) + " " + args + " > " + o.string() + " 2> " + e.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("norm of builtin cos") {
  const auto out = scratch() / "norm_cos";
  const auto r = run("norm --spec " + quote(R"({"type":"builtin","name":"cos"})") + " --out " + out.string());
  CHECK(r.code == 0);
  const auto m = manifest(out);
  REQUIRE(m["rows"].size() == 1);
  CHECK(m["rows"][0]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("norm of a constant and other seminorms") {
  const auto out = scratch() / "norm_const";
  auto r = run("norm --spec " + quote(R"({"type":"builtin","name":"constant","params":{"value":2}})") + " --out " +
               out.string());
  CHECK(r.code == 0);
  CHECK(std::abs(manifest(out)["rows"][0]["value"].get<double>()) < 1e-12);
  const auto spec = scratch() / "sin.json";
  std::ofstream(spec) << R"({"type":"builtin","name":"sin"})";
  r = run("norm --which h32 --spec " + spec.string() + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(manifest(out)["rows"][0]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
  r = run("norm --which bmo --format csv --spec " + spec.string() + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(slurp(out / "manifest.csv").find("suite,operation,input,criterion,value,residual,tolerance,pass") !=
        std::string::npos);
}

TEST_CASE("malformed spec") {
  const auto spec = scratch() / "bad.json";
  std::ofstream(spec) << "{\n  \"type\": \"builtin\",\n  \"name\": \"cos\",,\n}\n";
  const auto r = run("norm --spec " + spec.string() + " --out " + (scratch() / "bad").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("parse") != std::string::npos);
  CHECK(r.err.find("bad.json:3:") != std::string::npos);
  const auto u = run("norm --spec " + quote(R"({"type":"builtin","name":"nope"})"));
  CHECK(u.code == 2);
  CHECK(u.err.find("unknown builtin") != std::string::npos);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("flow of the zero field is the identity") {
  const auto out = scratch() / "flow_zero";
  const auto r = run("flow --spec " + quote(R"({"field":{"type":"builtin","name":"zero"}})") + " --steps 100 --knots 4 --out " +
                     out.string());
  CHECK(r.code == 0);
  std::istringstream csv(slurp(out / "flow.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,x,h,dh,log_dh");
  int rows = 0;
  while (std::getline(csv, line)) {
    double t, x, h;
    char c;
    std::istringstream ls(line);
    ls >> t >> c >> x >> c >> h;
    CHECK(h == x);
    ++rows;
  }
  CHECK(rows > 0);
}

TEST_CASE("flow of the rotation field") {
  const auto out = scratch() / "flow_rot";
  const auto r = run("flow --spec " + quote(R"({"field":{"type":"builtin","name":"rotation"},"t_end":1})") +
                     " --steps 100 --knots 4 --out " + out.string());
  CHECK(r.code == 0);
  std::istringstream csv(slurp(out / "flow.csv"));
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    double t, x, h;
    char c;
    std::istringstream ls(line);
    ls >> t >> c >> x >> c >> h;
    CHECK(h == doctest::Approx(x + t).epsilon(1e-12));
  }
}

TEST_CASE("flow of the logistic field") {
  const auto out = scratch() / "flow_log";
  const auto r = run("flow --spec " + quote(R"({"field":{"type":"builtin","name":"logistic"}})") + " --out " + out.string());
  CHECK(r.code == 0);
  const auto m = manifest(out);
  bool closed = false;
  for (const auto& row : m["rows"]) {
    CHECK(row["pass"].get<bool>());
    if (row["operation"].get<std::string>().find("closed form") != std::string::npos) closed = true;
  }
  CHECK(closed);
  const auto bad = run("flow --spec " + quote(R"({"field":{"type":"builtin","name":"logistic"}})") + " --steps 7 --knots 4");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("step") != std::string::npos);
}

TEST_CASE("verify with a corrupted tolerance fails") {
  const auto cfg = scratch() / "zero_tol.json";
  std::ofstream(cfg) << R"({"tolerances":{"dilation":0}})";
  const auto out = scratch() / "verify_bad";
  const auto r = run("verify --suite functions --config " + cfg.string() + " --out " + out.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("failing rows") != std::string::npos);
  CHECK(r.out.find("dilation") != std::string::npos);
  CHECK(r.err.find("machine epsilon") != std::string::npos);
  const auto m = manifest(out);
  CHECK_FALSE(m["all_pass"].get<bool>());
  CHECK(m["config"]["tolerances"]["dilation"].get<double>() == 0.0);
}

TEST_CASE("verify one suite") {
  const auto out = scratch() / "verify_wpmap";
  const auto r = run("verify --suite wpmap --out " + out.string());
  CHECK(r.code == 0);
  const auto m = manifest(out);
  CHECK(m["rows"].size() > 5);
  for (const auto& row : m["rows"]) CHECK(row["suite"].get<std::string>() == "wpmap");
  CHECK(m["config"]["grid"]["x_cells"].get<int>() == 256);
  CHECK(m["config_hash"].get<std::string>().size() == 16);
}

TEST_CASE("invalid config") {
  const auto cfg = scratch() / "neg.json";
  std::ofstream(cfg) << R"({"grid":{"x_cells":-4}})";
  CHECK(run("verify --suite functions --config " + cfg.string()).code == 2);
  std::ofstream(cfg) << R"({"gird":{}})";
  CHECK(run("verify --suite functions --config " + cfg.string()).code == 2);
}
