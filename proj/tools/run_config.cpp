#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace dirac::cli {

Cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  if (s.empty()) throw ConfigError("empty complex number");
  if (s.front() == '(') {
    std::istringstream is(s);
    Cplx z;
    if (!(is >> z) || is.peek() != EOF) throw ConfigError("cannot parse complex number '" + raw + "'");
    return z;
  }
  static const std::regex re_only("^(" R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)" ")$");
  static const std::regex im_only("^(" R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)" R"(|[+-]?)i$)");
  static const std::regex both("^(" R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)" ")(" R"([+-](\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)" R"(|[+-])i$)");
  std::smatch m;
  auto value = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (std::regex_match(s, m, re_only)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(s, m, im_only)) return {0.0, value(m[1])};
  if (std::regex_match(s, m, both)) return {std::stod(m[1]), value(m[4])};
  throw ConfigError("cannot parse complex number '" + raw + "'");
}

Json to_json(Cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Mat2& m) {
  return Json::array({Json::array({to_json(m.a11), to_json(m.a12)}),
                      Json::array({to_json(m.a21), to_json(m.a22)})});
}

Cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_object() && j.contains("re")) return {j.at("re").get<double>(), j.value("im", 0.0)};
  throw ConfigError("expected a complex number, got " + j.dump());
}

Json to_json(const RunConfig& c) {
  Json pot{{"name", c.potential.name},
           {"a1", to_json(c.potential.a1)},
           {"a2", to_json(c.potential.a2)},
           {"p", c.potential.p}};
  if (!c.potential.file.empty()) pot["file"] = c.potential.file;
  Json xs = Json::array(), ls = Json::array();
  for (Cplx z : c.x) xs.push_back(to_json(z));
  for (Cplx z : c.lambda) ls.push_back(to_json(z));
  return Json{{"mu", to_json(c.mu)},
              {"c10", to_json(c.c10)},
              {"potential", pot},
              {"family", c.family},
              {"x", xs},
              {"lambda", ls},
              {"tolerances",
               {{"picard_tol", c.picard_tol},
                {"picard_max_iter", c.picard_max_iter},
                {"order", c.order},
                {"rtol", c.rtol},
                {"atol", c.atol}}},
              {"output", c.output},
              {"format", c.format},
              {"suites", c.suites}};
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("mu")) c.mu = complex_from_json(j["mu"]);
    if (j.contains("c10")) c.c10 = complex_from_json(j["c10"]);
    if (j.contains("potential")) {
      const auto& p = j["potential"];
      c.potential.name = p.value("name", c.potential.name);
      if (p.contains("a1")) c.potential.a1 = complex_from_json(p["a1"]);
      if (p.contains("a2")) c.potential.a2 = complex_from_json(p["a2"]);
      c.potential.p = p.value("p", c.potential.p);
      c.potential.file = p.value("file", std::string{});
    }
    c.family = j.value("family", c.family);
    if (j.contains("x"))
      for (const auto& v : j["x"]) c.x.push_back(complex_from_json(v));
    if (j.contains("lambda"))
      for (const auto& v : j["lambda"]) c.lambda.push_back(complex_from_json(v));
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      c.picard_tol = t.value("picard_tol", c.picard_tol);
      c.picard_max_iter = t.value("picard_max_iter", c.picard_max_iter);
      c.order = t.value("order", c.order);
      c.rtol = t.value("rtol", c.rtol);
      c.atol = t.value("atol", c.atol);
    }
    c.output = j.value("output", c.output);
    c.format = j.value("format", c.format);
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

void RunConfig::validate() const {
  make_mu();
  if (c10 == 0.0) throw ConfigError("c10 must be nonzero");
  const auto& n = potential.name;
  if (n != "zero" && n != "gauss" && n != "decay_pow" && n != "sampled")
    throw ConfigError("unknown potential '" + n + "'");
  if (n == "decay_pow" && !(potential.p > 2.0 * mu.real() - 1.0))
    throw ConfigError("decay_pow needs p > 2 Re mu - 1");
  if (n == "sampled" && !std::ifstream(potential.file))
    throw ConfigError("sampled potential file '" + potential.file + "' not found");
  if (family != "C" && family != "e" && family != "S" && family != "E" && family != "U")
    throw ConfigError("family must be one of C, e, S, E, U");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
  if (!(picard_tol > 0) || picard_max_iter < 1) throw ConfigError("bad Picard tolerances");
  if (order < 2 || order > 64) throw ConfigError("quadrature order must lie in [2, 64]");
  if (!(rtol > 0) || !(atol > 0)) throw ConfigError("bad integrator tolerances");
}

Mu RunConfig::make_mu() const {
  try {
    return Mu(mu);
  } catch (const Error& e) {
    throw ConfigError(std::string("mu: ") + e.what());
  }
}

Potential RunConfig::make_potential() const {
  const auto& p = potential;
  if (p.name == "zero") return Potential::zero();
  if (p.name == "gauss") return Potential::gauss(p.a1, p.a2);
  if (p.name == "decay_pow") return Potential::decay_pow(p.a1, p.a2, p.p);
  if (p.name == "sampled") {
    std::ifstream in(p.file);
    if (!in) throw ConfigError("cannot open " + p.file);
    std::vector<double> t;
    std::vector<Cplx> q1, q2;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      for (char& ch : line)
        if (ch == ',') ch = ' ';
      std::istringstream is(line);
      double v[5];
      if (!(is >> v[0] >> v[1] >> v[2] >> v[3] >> v[4]))
        throw ConfigError("bad row in " + p.file + ": " + line);
      t.push_back(v[0]);
      q1.emplace_back(v[1], v[2]);
      q2.emplace_back(v[3], v[4]);
    }
    try {
      return Potential::sampled(t, q1, q2);
    } catch (const Error& e) {
      throw ConfigError(p.file + ": " + e.what());
    }
  }
  throw ConfigError("unknown potential '" + p.name + "'");
}

PerturbedConfig RunConfig::perturbed() const {
  PerturbedConfig c;
  c.picard.tol = picard_tol;
  c.picard.max_iter = picard_max_iter;
  c.order = order;
  return c;
}

IntegratorConfig RunConfig::integrator() const {
  IntegratorConfig c;
  c.rtol = rtol;
  c.atol = atol;
  return c;
}

namespace {

bool is_complex(const Json& e) { return e.is_object() && e.size() == 2 && e.contains("re"); }

// small objects of scalars print on one line
bool is_small(const Json& e) {
  return e.is_object() && e.size() <= 3 &&
         std::all_of(e.begin(), e.end(), [](const Json& v) { return v.is_primitive(); });
}

void emit(const Json& j, std::string& out, int depth, bool compact) {
  auto open = [&](int d) {
    if (compact) return;
    out += "\n";
    out.append(2 * d, ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      bool flat = compact || is_small(j);
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) open(depth + 1);
        out += Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1, flat);
      }
      if (!flat) open(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short rows of scalars or complex values stay on one line
      bool flat = compact || (j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                                return e.is_primitive() || is_small(e);
                              }));
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",";
        if (!flat) open(depth + 1);
        emit(j[i], out, depth + 1, flat);
      }
      if (!flat) open(depth);
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0, false);
  out += "\n";
  return out;
}

}  // namespace dirac::cli
