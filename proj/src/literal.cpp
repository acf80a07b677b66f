#include "wpflow/literal.hpp"

#include <cmath>
#include <sstream>

namespace wpflow {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::parse, where + ": " + what);
}

double number(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) bad(where + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(where + "." + key, "value must be finite");
  return d;
}

std::string text(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) bad(where, "missing \"" + key + "\"");
  if (!j.at(key).is_string()) bad(where + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

std::vector<double> number_array(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array()) bad(where, "\"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  std::size_t i = 0;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) bad(where + "." + key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v.get<double>());
    ++i;
  }
  return out;
}

cplx coefficient(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  bad(where, "coefficient must be a number or [re, im]");
}

std::optional<Domain> domain_of(const json& j, const std::string& where) {
  if (!j.contains("domain")) return std::nullopt;
  const std::string d = text(j, "domain", where);
  if (d == "line") return Domain::line;
  if (d == "circle") return Domain::circle;
  bad(where + ".domain", "expected \"line\" or \"circle\"");
}

Window window_param(const json& p, Window fallback, const std::string& where) {
  if (!p.contains("window")) return fallback;
  const auto& w = p.at("window");
  if (!w.is_object()) bad(where + ".window", "expected {\"plateau\":..., \"edge\":...}");
  Window out{number(w, "plateau", fallback.plateau, where + ".window"), number(w, "edge", fallback.edge, where + ".window")};
  if (out.active() && !(out.edge > out.plateau && out.plateau >= 0.0)) bad(where + ".window", "need 0 <= plateau < edge");
  return out;
}

LineFunction line_sample(const std::function<double(double)>& f, const std::function<double(double)>& df,
                         const LiteralOptions& opt, Tail tail, double decay) {
  LineMeta meta;
  meta.tail = tail;
  meta.decay_exponent = decay;
  return LineFunction::sample(f, opt.half_width, opt.step, meta, df);
}

CircleFunction circle_sample(const std::function<double(double)>& f, std::size_t m) {
  return CircleFunction::sample([&](double t) { return cplx(f(t), 0.0); }, m, true);
}

ParsedFunction make_line(LineFunction f, std::string label) {
  ParsedFunction p;
  p.line = std::move(f);
  p.label = std::move(label);
  return p;
}

ParsedFunction make_circle(CircleFunction f, std::string label) {
  ParsedFunction p;
  p.circle = std::move(f);
  p.label = std::move(label);
  return p;
}

ParsedFunction parse_builtin(const json& j, const LiteralOptions& base, const std::string& where) {
  const std::string name = text(j, "name", where);
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (!params.is_object()) bad(where + ".params", "expected an object");
  const std::string pw = where + ".params";
  LiteralOptions opt = base;
  opt.half_width = number(params, "half_width", opt.half_width, pw);
  opt.step = number(params, "step", opt.step, pw);
  if (params.contains("samples")) {
    const double m = number(params, "samples", 0.0, pw);
    if (!(m >= 8.0) || m != std::floor(m)) bad(pw + ".samples", "expected an integer >= 8");
    opt.circle_samples = static_cast<std::size_t>(m);
  }
  const auto domain = domain_of(j, where);
  const bool circle = domain == Domain::circle;

  if (name == "gauss_bump") {
    const double A = number(params, "amplitude", 1.0, pw);
    const double c = number(params, "center", 0.0, pw);
    const double w = number(params, "width", 1.0, pw);
    if (!(w > 0.0)) bad(pw + ".width", "must be positive");
    const Window win = window_param(params, {}, pw);
    auto f = [=](double x) { const double s = (x - c) / w; return A * std::exp(-s * s) * win(x); };
    std::function<double(double)> df;
    if (!win.active()) df = [=](double x) { const double s = (x - c) / w; return -2.0 * s / w * A * std::exp(-s * s); };
    return make_line(line_sample(f, df, opt, Tail::zero, 0.0), "gauss_bump");
  }
  if (name == "sine_window") {
    const double A = number(params, "amplitude", 1.0, pw);
    const double k = number(params, "frequency", kPi, pw);
    const double ph = number(params, "phase", 0.0, pw);
    const Window win = window_param(params, {2.0, 4.0}, pw);
    auto f = [=](double x) { return A * std::sin(k * x + ph) * win(x); };
    return make_line(line_sample(f, {}, opt, Tail::zero, 0.0), "sine_window");
  }
  if (name == "triangle") {
    const double H = number(params, "height", 1.0, pw);
    const double w = number(params, "half_width_base", 1.0, pw);
    if (!(w > 0.0)) bad(pw + ".half_width_base", "must be positive");
    auto f = [=](double x) { return H * std::max(0.0, 1.0 - std::abs(x) / w); };
    return make_line(line_sample(f, {}, opt, Tail::zero, 0.0), "triangle");
  }
  if (name == "logistic") {
    const double A = number(params, "amplitude", 1.0, pw);
    const Window win = window_param(params, {2.0, 4.0}, pw);
    auto f = [=](double x) { return A * x * (1.0 - x) * win(x - 0.5); };
    return make_line(line_sample(f, {}, opt, Tail::zero, 0.0), "logistic");
  }
  if (name == "linear") {
    const double a = number(params, "intercept", 0.0, pw);
    const double b = number(params, "slope", 1.0, pw);
    const Window win = window_param(params, {}, pw);
    auto f = [=](double x) { return (a + b * x) * win(x); };
    const Tail tail = win.active() ? Tail::zero : Tail::none;
    return make_line(line_sample(f, {}, opt, tail, win.active() ? 0.0 : 1.0), "linear");
  }
  if (name == "constant" || name == "zero") {
    const double c = name == "zero" ? 0.0 : number(params, "value", 1.0, pw);
    if (circle) return make_circle(circle_sample([=](double) { return c; }, opt.circle_samples), name);
    return make_line(line_sample([=](double) { return c; }, [](double) { return 0.0; }, opt, Tail::none, 0.0), name);
  }
  if (domain == Domain::line) bad(where, "builtin \"" + name + "\" is not a line function");
  if (name == "cos" || name == "sin") {
    const double A = number(params, "amplitude", 1.0, pw);
    const double n = number(params, "mode", 1.0, pw);
    const bool is_cos = name == "cos";
    auto f = [=](double t) { return A * (is_cos ? std::cos(n * t) : std::sin(n * t)); };
    return make_circle(circle_sample(f, opt.circle_samples), name);
  }
  if (name == "rotation") {
    const double s = number(params, "speed", 1.0, pw);
    return make_circle(circle_sample([=](double) { return s; }, opt.circle_samples), "rotation");
  }
  if (name == "normalized_sine") {
    const double e = number(params, "epsilon", 0.5, pw);
    auto f = [=](double t) { return e * std::sin(t) * (1.0 + std::sin(t)); };
    return make_circle(circle_sample(f, opt.circle_samples), "normalized_sine");
  }
  if (name == "tangential") {
    const double p1 = number(params, "p1", 0.3, pw);
    const double p2 = number(params, "p2", 0.2, pw);
    const double p3 = number(params, "p3", 0.1, pw);
    auto f = [=](double t) { return p1 * std::sin(t) + p2 * (1.0 - std::cos(t)) + p3 * std::sin(2.0 * t); };
    return make_circle(circle_sample(f, opt.circle_samples), "tangential");
  }
  bad(where + ".name", "unknown builtin \"" + name + "\"");
}

}  // namespace

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON";
    const std::string what = e.what();
    const auto pos = what.rfind(": ");
    if (pos != std::string::npos) os << " (" << what.substr(pos + 2) << ")";
    fail(ErrorKind::parse, os.str());
  }
}

ParsedFunction parse_function(const json& j, const LiteralOptions& opt) {
  const std::string where = "spec";
  if (!j.is_object()) bad(where, "function literal must be an object");
  const std::string type = text(j, "type", where);
  if (type == "builtin") return parse_builtin(j, opt, where);
  if (type == "fourier") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) bad(where, "\"coeffs\" must be an array indexed -N..N");
    std::vector<cplx> c;
    std::size_t i = 0;
    for (const auto& v : j.at("coeffs")) c.push_back(coefficient(v, where + ".coeffs[" + std::to_string(i++) + "]"));
    if (c.size() % 2 != 1) bad(where + ".coeffs", "need an odd count (indices -N..N)");
    bool real = true;
    const std::size_t N = c.size() / 2;
    for (std::size_t n = 0; n <= N; ++n) {
      if (std::abs(c[N + n] - std::conj(c[N - n])) > 1e-14 * (1.0 + std::abs(c[N + n]))) real = false;
    }
    if (j.contains("real")) real = j.at("real").get<bool>();
    std::size_t m = opt.circle_samples;
    m = static_cast<std::size_t>(number(j, "samples", static_cast<double>(m), where));
    while (m < 2 * N + 2) m *= 2;
    return make_circle(CircleFunction::from_coeffs(std::move(c), m, real), "fourier");
  }
  if (type == "samples") {
    const auto ys = number_array(j, "ys", where);
    if (domain_of(j, where) == Domain::circle) {
      std::vector<cplx> s(ys.begin(), ys.end());
      return make_circle(CircleFunction::from_samples(std::move(s), true), "samples");
    }
    auto xs = number_array(j, "xs", where);
    if (xs.size() != ys.size()) bad(where, "\"xs\" and \"ys\" differ in length");
    LineMeta meta;
    const std::string tail = j.contains("tail") ? text(j, "tail", where) : "zero";
    if (tail == "none") {
      meta.tail = Tail::none;
    } else if (tail != "zero") {
      bad(where + ".tail", "expected \"zero\" or \"none\"");
    }
    meta.decay_exponent = number(j, "decay_exponent", 0.0, where);
    return make_line(LineFunction(std::move(xs), std::vector<double>(ys), meta), "samples");
  }
  bad(where + ".type", "unknown literal type \"" + type + "\"");
}

ParsedFunction builtin_function(std::string_view name, const json& params, const LiteralOptions& opt) {
  json j = {{"type", "builtin"}, {"name", std::string(name)}, {"params", params}};
  if (params.contains("domain")) j["domain"] = params.at("domain");
  json p = params;
  p.erase("domain");
  j["params"] = p;
  return parse_function(j, opt);
}

TimeDependentField parse_field(const json& j, const LiteralOptions& opt) {
  const std::string where = "field";
  if (!j.is_object()) bad(where, "field literal must be an object");
  TimeInterp interp = TimeInterp::linear;
  if (j.contains("interp")) {
    const std::string s = text(j, "interp", where);
    if (s == "cubic") {
      interp = TimeInterp::cubic;
    } else if (s != "linear") {
      bad(where + ".interp", "expected \"linear\" or \"cubic\"");
    }
  }
  const bool normalized = j.contains("normalized") ? j.at("normalized").get<bool>() : false;
  std::vector<double> knots;
  std::vector<ParsedFunction> fields;
  if (j.contains("field")) {
    const double t_end = number(j, "t_end", 1.0, where);
    if (!(t_end > 0.0)) bad(where + ".t_end", "must be positive");
    knots = {0.0, t_end};
    auto f = parse_function(j.at("field"), opt);
    fields = {f, f};
  } else {
    knots = number_array(j, "time_knots", where);
    if (!j.contains("fields") || !j.at("fields").is_array()) bad(where, "\"fields\" must be an array of literals");
    for (const auto& f : j.at("fields")) fields.push_back(parse_function(f, opt));
  }
  if (fields.empty()) bad(where, "no fields");
  const Domain d = fields.front().domain();
  for (const auto& f : fields) {
    if (f.domain() != d) bad(where, "fields mix line and circle functions");
  }
  if (d == Domain::line) {
    std::vector<LineFunction> lines;
    for (auto& f : fields) lines.push_back(*f.line);
    return TimeDependentField::line(std::move(knots), std::move(lines), interp, true);
  }
  std::vector<CircleFunction> circles;
  for (auto& f : fields) circles.push_back(*f.circle);
  return TimeDependentField::circle(std::move(knots), std::move(circles), interp, normalized);
}

}  // namespace wpflow
