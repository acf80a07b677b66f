#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "wpflow/flow.hpp"
#include "wpflow/functions.hpp"

namespace wpflow {

using json = nlohmann::json;

struct LiteralOptions {
  double half_width = 16.0;
  double step = 1.0 / 64.0;
  std::size_t circle_samples = 512;
};

/// Exactly one of line / circle is set.
struct ParsedFunction {
  std::optional<LineFunction> line;
  std::optional<CircleFunction> circle;
  std::string label;

  Domain domain() const { return circle ? Domain::circle : Domain::line; }
};

/// Parses JSON text; syntax errors become parse errors carrying line and column.
json parse_json_text(std::string_view text, std::string_view source = "<input>");

/// {"type":"fourier", "coeffs":[...]}
/// {"type":"samples", "xs":[...], "ys":[...], "domain":"line"|"circle"}
/// {"type":"builtin", "name":..., "params":{...}, "domain":...}
ParsedFunction parse_function(const json& j, const LiteralOptions& opt = {});

/// A literal naming a builtin: parse_function({"type":"builtin","name":name}).
ParsedFunction builtin_function(std::string_view name, const json& params = json::object(),
                                const LiteralOptions& opt = {});

/// {"time_knots":[...], "fields":[...], "interp":"linear"|"cubic",
///  "normalized":bool} or {"field":{...}, "t_end":T}.
TimeDependentField parse_field(const json& j, const LiteralOptions& opt = {});

}  // namespace wpflow
