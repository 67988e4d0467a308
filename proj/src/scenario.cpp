#include "riccilab/scenario.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/core.h>
#include <json.hpp>

#include "riccilab/random.hpp"

namespace riccilab::scenario {

using expr::Evaluator;
using expr::Expression;
using json = nlohmann::json;
using tensor::MetricValue;
using tensor::Valence;
using tensor::Variance;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

void check_keys(const json& obj, const char* where,
                const std::unordered_set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) fail(fmt::format("{}: unknown field '{}'", where, key));
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(fmt::format("missing required field '{}'", key));
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

std::vector<std::string> coordinate_names(const json& j) {
  if (!j.is_array() || j.size() != 4) fail("coordinates must be an array of 4 names");
  std::vector<std::string> out;
  for (const auto& c : j) {
    if (!c.is_string()) fail("coordinates must be strings");
    out.push_back(c.get<std::string>());
  }
  return out;
}

Expression parse_expr(const json& j, const std::string& where,
                      const std::vector<std::string>& coords) {
  if (!j.is_string()) fail(where + " must be an expression string");
  try {
    return expr::parse(j.get<std::string>(), coords);
  } catch (const Error& e) {
    fail(fmt::format("{}: {}", where, e.what()));
  }
}

geom::MetricComponents parse_metric(const json& j, const std::vector<std::string>& coords) {
  if (!j.is_array() || j.size() != 4) fail("metric must be a 4x4 array of expressions");
  geom::MetricComponents mc;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) fail("metric rows must have 4 entries");
    for (int k = 0; k < 4; ++k)
      mc[i][k] = parse_expr(j[i][k], fmt::format("metric[{}][{}]", i, k), coords);
  }
  return mc;
}

TensorField parse_vector(const json& j, const char* name,
                         const std::vector<std::string>& coords) {
  if (!j.is_array() || j.size() != 4)
    fail(fmt::format("{} must be an array of 4 expressions", name));
  TensorField v(Valence{Variance::Up});
  for (int i = 0; i < 4; ++i) v(i) = parse_expr(j[i], fmt::format("{}[{}]", name, i), coords);
  return v;
}

TensorField parse_alpha(const json& j, const std::vector<std::string>& coords) {
  if (!j.is_array() || j.size() != 4) fail("alpha must be a 4x4 array of expressions");
  TensorField a(Valence{Variance::Down, Variance::Down});
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) fail("alpha rows must have 4 entries");
    for (int k = 0; k < 4; ++k)
      a(i, k) = parse_expr(j[i][k], fmt::format("alpha[{}][{}]", i, k), coords);
  }
  return a;
}

std::array<double, 4> bounds(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 4)
    fail(fmt::format("random_points.{} must be an array of 4 numbers", name));
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = number(j[i], fmt::format("random_points.{}", name));
  return out;
}

std::string point_str(const Point& p) {
  return fmt::format("({:.6g}, {:.6g}, {:.6g}, {:.6g})", p[0], p[1], p[2], p[3]);
}

}  // namespace

std::string digest_bytes(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

Scenario load_text(const std::string& text, const std::string& name, const Overrides& ov) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(fmt::format("not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) fail("scenario must be a JSON object");
  check_keys(root, "scenario",
             {"coordinates", "metric", "xi", "potential", "lambda", "kappa",
              "soliton_lambda", "alpha", "points", "random_points", "tolerance"});

  std::vector<std::string> coords = coordinate_names(require(root, "coordinates"));
  geom::Geometry geo =
      geom::Geometry::build(parse_metric(require(root, "metric"), coords), coords);
  std::optional<TensorField> xi, potential, alpha;
  if (root.contains("xi")) xi = parse_vector(root["xi"], "xi", coords);
  if (root.contains("potential"))
    potential = parse_vector(root["potential"], "potential", coords);
  if (root.contains("alpha")) alpha = parse_alpha(root["alpha"], coords);

  double lambda = number(require(root, "lambda"), "lambda");
  double kappa = number(require(root, "kappa"), "kappa");
  if (!(kappa > 0.0)) fail("kappa must be > 0");
  std::optional<double> soliton_lambda;
  if (root.contains("soliton_lambda"))
    soliton_lambda = number(root["soliton_lambda"], "soliton_lambda");

  double tolerance = root.contains("tolerance") ? number(root["tolerance"], "tolerance") : 1e-8;
  if (ov.tolerance) tolerance = *ov.tolerance;
  if (!(tolerance > 0.0)) fail("tolerance must be > 0");

  std::vector<Point> points;
  if (root.contains("points")) {
    const json& pts = root["points"];
    if (!pts.is_array()) fail("points must be an array of 4-number arrays");
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 4) fail("each point must have 4 coordinates");
      Point q{};
      for (int i = 0; i < 4; ++i) q[i] = number(p[i], "point coordinate");
      points.push_back(q);
    }
  }
  std::uint64_t seed = 0;
  if (root.contains("random_points")) {
    const json& rp = root["random_points"];
    if (!rp.is_object()) fail("random_points must be an object");
    check_keys(rp, "random_points", {"count", "low", "high", "seed"});
    int count = static_cast<int>(number(require(rp, "count"), "random_points.count"));
    if (count < 0) fail("random_points.count must be >= 0");
    std::array<double, 4> low = bounds(require(rp, "low"), "low");
    std::array<double, 4> high = bounds(require(rp, "high"), "high");
    seed = static_cast<std::uint64_t>(number(require(rp, "seed"), "random_points.seed"));
    if (ov.seed) seed = *ov.seed;
    std::uint64_t gen = seed;
    for (int k = 0; k < count; ++k) {
      Point q{};
      for (int i = 0; i < 4; ++i) q[i] = rng::uniform(gen, low[i], high[i]);
      points.push_back(q);
    }
  }
  if (points.empty()) fail("scenario needs at least one sample point");

  // numeric validation at every sample point
  for (const auto& p : points) {
    Evaluator ev(p);
    MetricValue m = geo.metric_value(ev);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j)
        if (std::abs(m.g.at({i, j}) - m.g.at({j, i})) > tolerance)
          fail(fmt::format("metric is not symmetric at {}", point_str(p)));
    if (!m.lorentzian())
      fail(fmt::format("metric signature is not (-,+,+,+) at {}", point_str(p)));
    if (xi) {
      tensor::Tensor xv = xi->evaluate(ev);
      double norm = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) norm += m.g.at({i, j}) * xv.at({i}) * xv.at({j});
      if (std::abs(norm + 1.0) > tolerance)
        fail(fmt::format("xi is not unit timelike at {}: g(xi,xi) = {:.12g}", point_str(p),
                         norm));
    }
    if (alpha) {
      tensor::Tensor av = alpha->evaluate(ev);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j)
          if (std::abs(av.at({i, j}) - av.at({j, i})) > tolerance)
            fail(fmt::format("alpha is not symmetric at {}", point_str(p)));
    }
  }
  return Scenario{name,  digest_bytes(text), std::move(coords), std::move(geo),
                  xi,    potential,          alpha,             lambda,
                  kappa, soliton_lambda,     tolerance,         std::move(points),
                  seed};
}

Scenario load_file(const std::string& path, const Overrides& ov) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(fmt::format("cannot open scenario file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return load_text(buf.str(), stem, ov);
}

}  // namespace riccilab::scenario
