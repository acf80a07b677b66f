#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wpflow/literal.hpp"

using namespace wpflow;

TEST_CASE("fourier literal") {
  const auto f = parse_function(json::parse(R"({"type":"fourier","coeffs":[0.5,0,0.5]})"));
  REQUIRE(f.circle);
  CHECK(f.circle->value(0.3) == doctest::Approx(std::cos(0.3)));
  CHECK(h12_circle(*f.circle).value == doctest::Approx(0.5));
  const auto g = parse_function(json::parse(R"({"type":"fourier","coeffs":[[0,0.5],0,[0,-0.5]],"samples":64})"));
  CHECK(g.circle->value(0.3) == doctest::Approx(std::sin(0.3)));
}

TEST_CASE("sample literals") {
  const auto f = parse_function(json::parse(R"({"type":"samples","xs":[0,1,2,3,4],"ys":[0,1,4,9,16]})"));
  REQUIRE(f.line);
  CHECK((*f.line)(2.5) == doctest::Approx(6.25).epsilon(1e-2));
  CHECK((*f.line)(10.0) == 0.0);
  const auto c = parse_function(json::parse(R"({"type":"samples","domain":"circle","ys":[1,0.7071067811865476,0,-0.7071067811865476,-1,-0.7071067811865476,0,0.7071067811865476]})"));
  CHECK(c.domain() == Domain::circle);
  CHECK(c.circle->value(0.0) == doctest::Approx(1.0));
}

TEST_CASE("builtins") {
  const auto g = builtin_function("gauss_bump", {{"amplitude", 2.0}, {"center", 1.0}});
  CHECK((*g.line)(1.0) == doctest::Approx(2.0));
  CHECK(g.line->xs().front() == -16.0);
  CHECK(g.line->step() == doctest::Approx(1.0 / 64.0));
  const auto l = builtin_function("logistic");
  CHECK((*l.line)(0.25) == doctest::Approx(0.1875));
  CHECK((*l.line)(10.0) == 0.0);
  CHECK(builtin_function("constant", {{"value", 3.0}}).line->meta().tail == Tail::none);
  const auto rot = builtin_function("rotation");
  CHECK(rot.circle->value(1.0) == doctest::Approx(1.0));
  const auto zc = builtin_function("zero", {{"domain", "circle"}});
  CHECK(zc.domain() == Domain::circle);
  const auto ns = builtin_function("normalized_sine", {{"epsilon", 0.5}});
  CHECK(ns.circle->value(3 * kPi / 2) == doctest::Approx(0.0));
  CHECK(builtin_function("cos").circle->size() == 512);
}

TEST_CASE("parse diagnostics carry line and column") {
  try {
    parse_json_text("{\n  \"type\": \"builtin\",\n  \"name\": cos\n}", "f.json");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("f.json:3:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_function(json::parse(R"({"type":"builtin","name":"nope"})")), Error);
  CHECK_THROWS_AS(parse_function(json::parse(R"({"type":"fourier","coeffs":[1,2]})")), Error);
  CHECK_THROWS_AS(parse_function(json::parse(R"({"type":"samples","xs":[0,1],"ys":[1]})")), Error);
  CHECK_THROWS_AS(parse_function(json::parse(R"({"type":"builtin","name":"gauss_bump","params":{"width":"x"}})")), Error);
}

TEST_CASE("field literals") {
  const auto f = parse_field(json::parse(R"({"field":{"type":"builtin","name":"logistic"},"t_end":2})"));
  CHECK(f.domain() == Domain::line);
  CHECK(f.t_end() == 2.0);
  CHECK(f.value(0.5, 0.5) == doctest::Approx(0.25));
  const auto g = parse_field(json::parse(R"({"time_knots":[0,1,2],"interp":"cubic",
      "fields":[{"type":"builtin","name":"zero","domain":"circle"},
                {"type":"builtin","name":"rotation"},
                {"type":"builtin","name":"rotation","params":{"speed":2}}]})"));
  CHECK(g.domain() == Domain::circle);
  CHECK(g.interp() == TimeInterp::cubic);
  // line fields must vanish at 0 and 1
  CHECK_THROWS_AS(parse_field(json::parse(R"({"field":{"type":"builtin","name":"gauss_bump"}})")), Error);
  CHECK_THROWS_AS(parse_field(json::parse(R"({"time_knots":[0,1],"fields":[{"type":"builtin","name":"logistic"},
      {"type":"builtin","name":"cos"}]})")),
                  Error);
}
