#include "mwl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mwl/error.hpp"
#include "mwl/spectrum.hpp"

namespace mwl {

using nlohmann::json;
using nlohmann::ordered_json;

Potential PotentialSpec::build() const {
  if (family == "zero") return Potential::constant(0.0);
  if (family == "constant") return Potential::constant(c);
  if (family == "bernoulli") return Potential::bernoulli(p);
  if (family == "table") return Potential::table(range, values);
  throw Error("unknown potential family: " + family);
}

std::vector<double> RunConfig::q_values() const { return uniform_grid(q_grid[0], q_grid[1], q_grid[2]); }

std::vector<double> RunConfig::legendre_grid() const {
  return uniform_grid(-legendre_qmax, legendre_qmax, legendre_step);
}

std::vector<std::string> fixture_ids() { return {"monofractal", "bernoulli", "smoke"}; }

RunConfig fixture_preset(const std::string& id) {
  RunConfig c;
  c.fixture = id;
  if (id == "monofractal") return c;
  if (id == "bernoulli") {
    c.potential.family = "bernoulli";
    c.potential.p = 0.25;
    c.s0 = 0.6;
    c.p0 = 2.0;
    c.verify_q = {0.0, 1.0};
    return c;
  }
  if (id == "smoke") {
    c.amplitude = 0.0;
    c.J = 10;
    c.G = 10;
    c.box_scales = {4, 8};
    c.cover_levels = {4, 6};
    c.point_level = 6;
    c.energy_level = 6;
    c.clearance_level = 10;
    return c;
  }
  throw Error("unknown fixture: " + id);
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["fixture"] = c.fixture;
  ordered_json pot;
  pot["family"] = c.potential.family;
  if (c.potential.family == "bernoulli") pot["p"] = c.potential.p;
  if (c.potential.family == "constant") pot["c"] = c.potential.c;
  if (c.potential.family == "table") {
    pot["range"] = c.potential.range;
    pot["values"] = c.potential.values;
  }
  j["potential"] = pot;
  j["wavelet"] = c.wavelet;
  j["s0"] = c.s0;
  j["p0"] = c.p0;
  j["k"] = c.k;
  j["kSweep"] = c.k_sweep;
  j["J"] = c.J;
  j["G"] = c.G;
  j["seed"] = c.seed;
  j["signRule"] = c.sign_rule;
  j["perturbation"] = {{"law", c.perturbation}, {"sigma", c.perturbation_sigma}, {"clip", c.perturbation_clip}};
  j["amplitude"] = c.amplitude;
  j["qGrid"] = {{"min", c.q_grid[0]}, {"max", c.q_grid[1]}, {"step", c.q_grid[2]}};
  j["verifyQ"] = c.verify_q;
  j["legendre"] = {{"qmax", c.legendre_qmax}, {"step", c.legendre_step}};
  j["eps"] = c.eps;
  j["tol"] = c.tol;
  j["leaderScales"] = std::array<int, 2>{c.leader_lo(), c.leader_hi()};
  j["boxScales"] = c.box_scales;
  j["coverLevels"] = c.cover_levels;
  j["pointLevel"] = c.point_level;
  j["energyLevel"] = c.energy_level;
  j["clearanceLevel"] = c.clearance_level;
  j["tolerances"] = {{"h", c.tolerances.h},           {"xiStar", c.tolerances.xi_star},
                     {"graph", c.tolerances.graph},   {"range", c.tolerances.range},
                     {"energy", c.tolerances.energy}, {"theoremA", c.tolerances.theorem_a}};
  return j;
}

namespace {

int line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::string quoted = "\"" + key + "\"";
    const auto pos = text_.find(quoted);
    std::ostringstream os;
    os << "config line " << (pos == std::string::npos ? 1 : line_at(text_, pos)) << ": " << key << ": " << what;
    throw Error(os.str());
  }

  void known(const json& obj, const std::set<std::string>& keys, const std::string& where) const {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [k, v] : obj.items())
      if (!keys.count(k)) fail(k, "unknown key");
  }

  template <typename T>
  void get(const json& obj, const std::string& key, T& out) const {
    if (!obj.contains(key)) return;
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
      fail(key, std::string("wrong type (") + e.what() + ")");
    }
  }

  const std::string& text() const { return text_; }

 private:
  const std::string& text_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "config line " << line_at(text, e.byte == 0 ? 0 : e.byte - 1) << ": malformed JSON (" << e.what() << ")";
    throw Error(os.str());
  }
  Reader r(text);
  r.known(root,
          {"fixture", "potential", "wavelet", "s0", "p0", "k", "kSweep", "J", "G", "seed", "signRule", "perturbation",
           "amplitude", "qGrid", "verifyQ", "legendre", "eps", "tol", "leaderScales", "boxScales", "coverLevels",
           "pointLevel", "energyLevel", "clearanceLevel", "tolerances"},
          "config");

  RunConfig c = base;
  if (root.contains("fixture")) {
    std::string id;
    r.get(root, "fixture", id);
    try {
      c = fixture_preset(id);
    } catch (const Error& e) {
      r.fail("fixture", e.what());
    }
  }
  if (root.contains("potential")) {
    const json& p = root["potential"];
    r.known(p, {"family", "p", "c", "range", "values"}, "potential");
    r.get(p, "family", c.potential.family);
    r.get(p, "p", c.potential.p);
    r.get(p, "c", c.potential.c);
    r.get(p, "range", c.potential.range);
    r.get(p, "values", c.potential.values);
    try {
      (void)c.potential.build();
    } catch (const Error& e) {
      r.fail("potential", e.what());
    }
  }
  r.get(root, "wavelet", c.wavelet);
  r.get(root, "s0", c.s0);
  r.get(root, "p0", c.p0);
  r.get(root, "k", c.k);
  r.get(root, "kSweep", c.k_sweep);
  r.get(root, "J", c.J);
  r.get(root, "G", c.G);
  r.get(root, "seed", c.seed);
  r.get(root, "signRule", c.sign_rule);
  if (root.contains("perturbation")) {
    const json& p = root["perturbation"];
    r.known(p, {"law", "sigma", "clip"}, "perturbation");
    r.get(p, "law", c.perturbation);
    r.get(p, "sigma", c.perturbation_sigma);
    r.get(p, "clip", c.perturbation_clip);
  }
  r.get(root, "amplitude", c.amplitude);
  if (root.contains("qGrid")) {
    const json& q = root["qGrid"];
    r.known(q, {"min", "max", "step"}, "qGrid");
    r.get(q, "min", c.q_grid[0]);
    r.get(q, "max", c.q_grid[1]);
    r.get(q, "step", c.q_grid[2]);
  }
  r.get(root, "verifyQ", c.verify_q);
  if (root.contains("legendre")) {
    const json& l = root["legendre"];
    r.known(l, {"qmax", "step"}, "legendre");
    r.get(l, "qmax", c.legendre_qmax);
    r.get(l, "step", c.legendre_step);
  }
  r.get(root, "eps", c.eps);
  r.get(root, "tol", c.tol);
  r.get(root, "leaderScales", c.leader_scales);
  r.get(root, "boxScales", c.box_scales);
  r.get(root, "coverLevels", c.cover_levels);
  r.get(root, "pointLevel", c.point_level);
  r.get(root, "energyLevel", c.energy_level);
  r.get(root, "clearanceLevel", c.clearance_level);
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    r.known(t, {"h", "xiStar", "graph", "range", "energy", "theoremA"}, "tolerances");
    r.get(t, "h", c.tolerances.h);
    r.get(t, "xiStar", c.tolerances.xi_star);
    r.get(t, "graph", c.tolerances.graph);
    r.get(t, "range", c.tolerances.range);
    r.get(t, "energy", c.tolerances.energy);
    r.get(t, "theoremA", c.tolerances.theorem_a);
  }

  try {
    validate(c);
  } catch (const Error& e) {
    // point at the first key mentioned by the message, when there is one
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    r.fail(colon == std::string::npos ? "config" : msg.substr(0, colon), colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  return c;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw Error(msg);
  };
  require(c.p0 > 0.0, "p0: must be positive");
  require(c.s0 > 0.0, "s0: must be positive");
  require(c.s0 - 1.0 / c.p0 > 0.0, "s0: s0 - 1/p0 must be positive");
  require(c.k >= 2 && c.k <= 20, "k: must lie in [2, 20]");
  require(c.k_sweep[0] >= 2 && c.k_sweep[0] <= c.k_sweep[1] && c.k_sweep[1] <= 20, "kSweep: need 2 <= from <= to <= 20");
  require(c.J >= 4 && c.J <= 22, "J: must lie in [4, 22]");
  require(c.G >= 6 && c.G <= 22, "G: must lie in [6, 22]");
  require(c.J <= c.G, "J: must not exceed G");
  require(c.q_grid[2] > 0.0 && c.q_grid[0] <= c.q_grid[1], "qGrid: need min <= max and step > 0");
  require(!c.verify_q.empty(), "verifyQ: must not be empty");
  require(c.legendre_qmax > 0.0 && c.legendre_step > 0.0, "legendre: qmax and step must be positive");
  require(c.eps >= 0.0, "eps: must be nonnegative");
  require(c.tol >= 0.0, "tol: must be nonnegative");
  require(c.leader_lo() >= 3 && c.leader_hi() <= c.J && c.leader_hi() - c.leader_lo() >= 2,
          "leaderScales: need 3 <= lo, hi <= J and at least 3 levels");
  require(c.box_scales[0] >= 4 && c.box_scales[1] <= c.G - 2 && c.box_scales[1] - c.box_scales[0] >= 3,
          "boxScales: need at least 4 scales inside [4, G - 2]");
  require(c.box_scales[1] <= c.J - 2, "boxScales: per-level covers need scales up to J - 2");
  require(c.cover_levels[0] >= 2 && c.cover_levels[1] <= c.J - 2 && c.cover_levels[0] < c.cover_levels[1],
          "coverLevels: need 2 <= lo < hi <= J - 2");
  require(c.point_level >= 1 && c.point_level < c.G, "pointLevel: must lie in [1, G - 1]");
  require(c.energy_level >= 4 && c.energy_level < c.G, "energyLevel: must lie in [4, G - 1]");
  require(c.clearance_level >= c.k && c.clearance_level <= 22, "clearanceLevel: must lie in [k, 22]");
  require(std::isfinite(c.amplitude), "amplitude: must be finite");
  auto nested = [](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      throw Error(key + ": " + e.what());
    }
  };
  nested("signRule", [&] { (void)parse_sign_rule(c.sign_rule); });
  nested("perturbation", [&] { (void)c.law(); });
  nested("potential", [&] { (void)c.potential.build(); });
  if (c.wavelet != "gauss2" && c.wavelet != "sinBump" && c.wavelet.rfind("cascadeDb", 0) != 0)
    throw Error("wavelet: unknown kind " + c.wavelet);
}

}  // namespace mwl
