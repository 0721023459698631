#include "bhplab/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bhplab/kernel.hpp"
#include "json.hpp"

namespace bhp {

using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kScenarioNames = {
    "lemma-grid",  "cone-exit", "bhp-uniform",      "masson",
    "qhbc-suite",  "carleson",  "counterexample-d3", "bhp-2d-general",
};

struct Ctx {
  std::vector<std::string>* errors;
  void err(const std::string& path, const std::string& msg) const {
    errors->push_back(path + ": " + msg);
  }
};

void check_keys(const ordered_json& j, const std::string& path,
                std::initializer_list<const char*> known, const Ctx& ctx) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) {
        ok = true;
        break;
      }
    if (!ok) ctx.err(path + "." + key, "unknown key");
  }
}

bool get_num(const ordered_json& j, const char* key, const std::string& path, const Ctx& ctx,
             double& out) {
  if (!j.contains(key)) return false;
  if (!j[key].is_number()) {
    ctx.err(path + "." + key, "expected a number");
    return false;
  }
  out = j[key].get<double>();
  return true;
}

bool get_int(const ordered_json& j, const char* key, const std::string& path, const Ctx& ctx,
             int64_t& out) {
  if (!j.contains(key)) return false;
  if (!j[key].is_number_integer()) {
    ctx.err(path + "." + key, "expected an integer");
    return false;
  }
  out = j[key].get<int64_t>();
  return true;
}

bool get_str(const ordered_json& j, const char* key, const std::string& path, const Ctx& ctx,
             std::string& out) {
  if (!j.contains(key)) return false;
  if (!j[key].is_string()) {
    ctx.err(path + "." + key, "expected a string");
    return false;
  }
  out = j[key].get<std::string>();
  return true;
}

bool get_bool(const ordered_json& j, const char* key, const std::string& path, const Ctx& ctx,
              bool& out) {
  if (!j.contains(key)) return false;
  if (!j[key].is_boolean()) {
    ctx.err(path + "." + key, "expected a boolean");
    return false;
  }
  out = j[key].get<bool>();
  return true;
}

std::optional<Point> parse_point(const ordered_json& j, int dim, const std::string& path,
                                 const Ctx& ctx) {
  if (!j.is_array() || j.size() < 2 || j.size() > Point::kMaxDim) {
    ctx.err(path, "expected a coordinate array of length 2..10");
    return std::nullopt;
  }
  if (dim > 0 && static_cast<int>(j.size()) != dim) {
    ctx.err(path, "coordinate count does not match the configured dimension");
    return std::nullopt;
  }
  Point p(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      ctx.err(path, "coordinates must be numbers");
      return std::nullopt;
    }
    p[static_cast<int>(i)] = j[i].get<double>();
  }
  return p;
}

void parse_obstacle(const ordered_json& j, int dim, const std::string& path, const Ctx& ctx,
                    std::vector<ObstacleShape>& out) {
  if (!j.is_object()) {
    ctx.err(path, "expected an obstacle object");
    return;
  }
  std::string type;
  if (!get_str(j, "type", path, ctx, type)) {
    ctx.err(path + ".type", "missing obstacle type");
    return;
  }
  if (type == "ball") {
    check_keys(j, path, {"type", "center", "radius"}, ctx);
    double radius = 0.0;
    if (!j.contains("center") || !get_num(j, "radius", path, ctx, radius)) {
      ctx.err(path, "ball needs center and radius");
      return;
    }
    auto c = parse_point(j["center"], dim, path + ".center", ctx);
    if (!c) return;
    if (!(radius > 0.0)) {
      ctx.err(path + ".radius", "must be > 0");
      return;
    }
    out.push_back(BallObstacle{*c, radius});
  } else if (type == "segment") {
    check_keys(j, path, {"type", "a", "b", "thickness"}, ctx);
    if (!j.contains("a") || !j.contains("b")) {
      ctx.err(path, "segment needs endpoints a and b");
      return;
    }
    auto a = parse_point(j["a"], dim, path + ".a", ctx);
    auto b = parse_point(j["b"], dim, path + ".b", ctx);
    double thickness = 0.0;
    get_num(j, "thickness", path, ctx, thickness);
    if (!a || !b) return;
    if (thickness < 0.0) {
      ctx.err(path + ".thickness", "must be >= 0");
      return;
    }
    out.push_back(SegmentObstacle{*a, *b, thickness});
  } else if (type == "polyline") {
    check_keys(j, path, {"type", "vertices", "thickness"}, ctx);
    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].size() < 2) {
      ctx.err(path + ".vertices", "polyline needs >= 2 vertices");
      return;
    }
    PolylineObstacle poly;
    for (size_t i = 0; i < j["vertices"].size(); ++i) {
      auto v = parse_point(j["vertices"][i], dim, path + ".vertices[" + std::to_string(i) + "]", ctx);
      if (!v) return;
      poly.vertices.push_back(*v);
    }
    get_num(j, "thickness", path, ctx, poly.thickness);
    if (poly.thickness < 0.0) {
      ctx.err(path + ".thickness", "must be >= 0");
      return;
    }
    out.push_back(std::move(poly));
  } else if (type == "hyperplane_disc") {
    check_keys(j, path, {"type", "center", "axis", "radius", "inner_radius"}, ctx);
    double radius = 0.0, inner = 0.0;
    int64_t axis = 0;
    if (!j.contains("center") || !get_num(j, "radius", path, ctx, radius)) {
      ctx.err(path, "hyperplane_disc needs center and radius");
      return;
    }
    get_int(j, "axis", path, ctx, axis);
    get_num(j, "inner_radius", path, ctx, inner);
    auto c = parse_point(j["center"], dim, path + ".center", ctx);
    if (!c) return;
    if (!(radius > 0.0) || inner < 0.0 || inner >= radius) {
      ctx.err(path, "need 0 <= inner_radius < radius");
      return;
    }
    if (axis < 0 || axis >= static_cast<int64_t>(c->dim())) {
      ctx.err(path + ".axis", "axis out of range");
      return;
    }
    out.push_back(HyperplaneDiscObstacle{*c, static_cast<int>(axis), radius, inner});
  } else {
    ctx.err(path + ".type", "unknown obstacle type '" + type + "'");
  }
}

void validate_semantics(ScenarioConfig& cfg, const Ctx& ctx) {
  if (cfg.dimension < 2 || cfg.dimension > Point::kMaxDim)
    ctx.err("dimension", "must be in [2,10]");
  else {
    const auto kc = DimensionConstants::make(cfg.dimension);
    if (cfg.beta != 0.0) {
      if (!(cfg.beta > 0.0) || cfg.beta > std::numbers::pi / 2)
        ctx.err("beta", "must lie in (0, pi/2]");
      else if (cfg.beta > kc.alpha_d && !cfg.allow_beta_above_alpha) {
        std::ostringstream os;
        os << "beta " << cfg.beta << " exceeds alpha_d = " << kc.alpha_d << " for d = "
           << cfg.dimension << " (set allow_beta_above_alpha to override; the bound reduction "
              "makes larger angles redundant)";
        ctx.err("beta", os.str());
      }
    }
  }
  if (!(cfg.outer_radius > 0.0)) ctx.err("domain.outer_radius", "must be > 0");
  if (!(cfg.wos.shell_eps > 0.0) || cfg.wos.shell_eps >= 1e-2 * cfg.outer_radius)
    ctx.err("wos.shell_eps", "must lie in (0, 1e-2 * outer_radius)");
  if (cfg.wos.max_steps < 1) ctx.err("wos.max_steps", "must be >= 1");
  if (cfg.wos.n_paths < 0) ctx.err("wos.n_paths", "must be >= 0");
  if (!(cfg.wos.safety_factor > 0.0) || cfg.wos.safety_factor > 1.0)
    ctx.err("wos.safety_factor", "must lie in (0, 1]");
  if (cfg.fd.grid < 32) ctx.err("fd.grid", "must be >= 32");
  if (!(cfg.fd.tol > 0.0)) ctx.err("fd.tol", "must be > 0");
  if (!(cfg.quad.tol > 0.0)) ctx.err("quad.tol", "must be > 0");
  if (cfg.qhyp.grid < 16) ctx.err("qhyp.grid", "must be >= 16");
  if (cfg.qhyp.stencil_range < 1 || cfg.qhyp.stencil_range > 4)
    ctx.err("qhyp.stencil_range", "must be in [1,4]");
  if (cfg.lattice.N < 2 || cfg.lattice.N > 256) ctx.err("lattice.N", "must be in [2,256]");
  if (cfg.lattice.n_walks < 0) ctx.err("lattice.n_walks", "must be >= 0");
  if (cfg.format != "csv" && cfg.format != "json") ctx.err("output.format", "must be csv or json");
  for (size_t i = 0; i < cfg.obstacles.size(); ++i) {
    try {
      Domain probe(cfg.dimension, {cfg.obstacles[i]}, cfg.outer_radius);
    } catch (const std::exception& e) {
      ctx.err("domain.obstacles[" + std::to_string(i) + "]", e.what());
    }
  }
  for (size_t i = 0; i < cfg.points.size(); ++i)
    if (cfg.points[i].dim() != cfg.dimension)
      ctx.err("points[" + std::to_string(i) + "]", "dimension mismatch");
}

ParseOutcome parse_config_json(const ordered_json& j) {
  ParseOutcome out;
  Ctx ctx{&out.errors};

  if (!j.is_object()) {
    ctx.err("$", "config must be a JSON object");
    return out;
  }

  ScenarioConfig cfg;
  std::string name;
  if (!get_str(j, "name", "$", ctx, name) || name.empty()) {
    ctx.err("name", "missing scenario name");
  } else {
    bool known = false;
    for (const auto& n : kScenarioNames) known = known || n == name;
    if (!known) {
      ctx.err("name", "unknown scenario '" + name + "'");
    } else {
      cfg = default_scenario_config(name);
    }
  }

  check_keys(j, "$",
             {"name", "dimension", "seed", "beta", "allow_beta_above_alpha", "domain", "engine",
              "wos", "fd", "quad", "qhyp", "lattice", "points", "output"},
             ctx);

  int64_t i64 = 0;
  double num = 0.0;
  std::string str;
  if (get_int(j, "dimension", "$", ctx, i64)) cfg.dimension = static_cast<int>(i64);
  if (j.contains("seed")) {
    if (j["seed"].is_number_unsigned() || j["seed"].is_number_integer())
      cfg.seed = j["seed"].get<uint64_t>();
    else
      ctx.err("seed", "expected an unsigned integer");
  }
  if (get_num(j, "beta", "$", ctx, num)) cfg.beta = num;
  get_bool(j, "allow_beta_above_alpha", "$", ctx, cfg.allow_beta_above_alpha);
  if (get_str(j, "engine", "$", ctx, str)) {
    if (str != "wos" && str != "fd" && str != "lattice" && str != "quad" && str != "qhyp")
      ctx.err("engine", "must be one of wos|fd|lattice|quad|qhyp");
    else
      cfg.engine = str;
  }

  if (j.contains("domain")) {
    const auto& dj = j["domain"];
    if (!dj.is_object()) {
      ctx.err("domain", "expected an object");
    } else {
      check_keys(dj, "domain", {"outer_radius", "obstacles"}, ctx);
      if (get_num(dj, "outer_radius", "domain", ctx, num)) cfg.outer_radius = num;
      if (dj.contains("obstacles")) {
        if (!dj["obstacles"].is_array()) {
          ctx.err("domain.obstacles", "expected an array");
        } else {
          cfg.obstacles.clear();
          for (size_t i = 0; i < dj["obstacles"].size(); ++i)
            parse_obstacle(dj["obstacles"][i], cfg.dimension,
                           "domain.obstacles[" + std::to_string(i) + "]", ctx, cfg.obstacles);
        }
      }
    }
  }

  if (j.contains("wos")) {
    const auto& wj = j["wos"];
    if (!wj.is_object()) {
      ctx.err("wos", "expected an object");
    } else {
      check_keys(wj, "wos", {"shell_eps", "max_steps", "n_paths", "safety_factor"}, ctx);
      if (get_num(wj, "shell_eps", "wos", ctx, num)) cfg.wos.shell_eps = num;
      if (get_int(wj, "max_steps", "wos", ctx, i64)) cfg.wos.max_steps = static_cast<int>(i64);
      if (get_int(wj, "n_paths", "wos", ctx, i64)) cfg.wos.n_paths = i64;
      if (get_num(wj, "safety_factor", "wos", ctx, num)) cfg.wos.safety_factor = num;
    }
  }
  if (j.contains("fd")) {
    const auto& fj = j["fd"];
    if (!fj.is_object()) {
      ctx.err("fd", "expected an object");
    } else {
      check_keys(fj, "fd", {"grid", "tol"}, ctx);
      if (get_int(fj, "grid", "fd", ctx, i64)) cfg.fd.grid = static_cast<int>(i64);
      if (get_num(fj, "tol", "fd", ctx, num)) cfg.fd.tol = num;
    }
  }
  if (j.contains("quad")) {
    const auto& qj = j["quad"];
    if (!qj.is_object()) {
      ctx.err("quad", "expected an object");
    } else {
      check_keys(qj, "quad", {"tol"}, ctx);
      if (get_num(qj, "tol", "quad", ctx, num)) cfg.quad.tol = num;
    }
  }
  if (j.contains("qhyp")) {
    const auto& qj = j["qhyp"];
    if (!qj.is_object()) {
      ctx.err("qhyp", "expected an object");
    } else {
      check_keys(qj, "qhyp", {"grid", "stencil_range"}, ctx);
      if (get_int(qj, "grid", "qhyp", ctx, i64)) cfg.qhyp.grid = static_cast<int>(i64);
      if (get_int(qj, "stencil_range", "qhyp", ctx, i64))
        cfg.qhyp.stencil_range = static_cast<int>(i64);
    }
  }
  if (j.contains("lattice")) {
    const auto& lj = j["lattice"];
    if (!lj.is_object()) {
      ctx.err("lattice", "expected an object");
    } else {
      check_keys(lj, "lattice", {"N", "norm", "n_walks"}, ctx);
      if (get_int(lj, "N", "lattice", ctx, i64)) cfg.lattice.N = static_cast<int>(i64);
      if (get_int(lj, "n_walks", "lattice", ctx, i64)) cfg.lattice.n_walks = i64;
      if (get_str(lj, "norm", "lattice", ctx, str)) {
        if (str == "euclidean")
          cfg.lattice.norm = LatticeNorm::euclidean;
        else if (str == "linf")
          cfg.lattice.norm = LatticeNorm::linf;
        else
          ctx.err("lattice.norm", "must be euclidean or linf");
      }
    }
  }
  if (j.contains("points")) {
    if (!j["points"].is_array()) {
      ctx.err("points", "expected an array of coordinate arrays");
    } else {
      cfg.points.clear();
      for (size_t i = 0; i < j["points"].size(); ++i) {
        auto p = parse_point(j["points"][i], cfg.dimension, "points[" + std::to_string(i) + "]", ctx);
        if (p) cfg.points.push_back(*p);
      }
    }
  }
  if (j.contains("output")) {
    const auto& oj = j["output"];
    if (!oj.is_object()) {
      ctx.err("output", "expected an object");
    } else {
      check_keys(oj, "output", {"dir", "format"}, ctx);
      if (get_str(oj, "dir", "output", ctx, str)) cfg.out_dir = str;
      if (get_str(oj, "format", "output", ctx, str)) cfg.format = str;
    }
  }

  validate_semantics(cfg, ctx);
  if (out.errors.empty()) out.config = std::move(cfg);
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() { return kScenarioNames; }

ScenarioConfig default_scenario_config(const std::string& name) {
  ScenarioConfig cfg;
  cfg.name = name;
  if (name == "lemma-grid") {
    cfg.engine = "quad";
  } else if (name == "cone-exit") {
    cfg.engine = "quad";
    cfg.wos.n_paths = 100000;
  } else if (name == "bhp-uniform") {
    cfg.engine = "wos";
    cfg.wos.n_paths = 50000;
  } else if (name == "masson") {
    cfg.engine = "lattice";
    cfg.lattice.n_walks = 100000;
  } else if (name == "qhbc-suite") {
    cfg.engine = "qhyp";
    cfg.qhyp.grid = 512;
  } else if (name == "carleson") {
    cfg.engine = "fd";
    cfg.fd.grid = 1024;
    cfg.fd.tol = 1e-9;
  } else if (name == "counterexample-d3") {
    cfg.engine = "wos";
    cfg.dimension = 3;
    cfg.wos.n_paths = 1000000;
  } else if (name == "bhp-2d-general") {
    cfg.engine = "fd";
    cfg.fd.grid = 2048;
    cfg.fd.tol = 1e-9;
  } else {
    throw std::invalid_argument("unknown scenario '" + name + "'");
  }
  return cfg;
}

ParseOutcome parse_config_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    ParseOutcome out;
    out.errors.push_back(std::string("syntax: ") + e.what());
    return out;
  }
  return parse_config_json(j);
}

ParseOutcome parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    ParseOutcome out;
    out.errors.push_back("io: cannot open config file '" + path + "'");
    return out;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
  ordered_json j;
  j["name"] = cfg.name;
  j["dimension"] = cfg.dimension;
  j["seed"] = cfg.seed;
  j["beta"] = cfg.beta;
  j["allow_beta_above_alpha"] = cfg.allow_beta_above_alpha;
  ordered_json dj;
  dj["outer_radius"] = cfg.outer_radius;
  ordered_json obs = ordered_json::array();
  for (const auto& s : cfg.obstacles) {
    ordered_json oj;
    std::visit(
        [&oj](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          auto coords = [](const Point& p) {
            ordered_json a = ordered_json::array();
            for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
            return a;
          };
          if constexpr (std::is_same_v<T, BallObstacle>) {
            oj["type"] = "ball";
            oj["center"] = coords(o.center);
            oj["radius"] = o.radius;
          } else if constexpr (std::is_same_v<T, SegmentObstacle>) {
            oj["type"] = "segment";
            oj["a"] = coords(o.a);
            oj["b"] = coords(o.b);
            oj["thickness"] = o.thickness;
          } else if constexpr (std::is_same_v<T, PolylineObstacle>) {
            oj["type"] = "polyline";
            ordered_json vs = ordered_json::array();
            for (const auto& v : o.vertices) vs.push_back(coords(v));
            oj["vertices"] = std::move(vs);
            oj["thickness"] = o.thickness;
          } else {
            oj["type"] = "hyperplane_disc";
            oj["center"] = coords(o.center);
            oj["axis"] = o.axis;
            oj["radius"] = o.radius;
            oj["inner_radius"] = o.inner_radius;
          }
        },
        s);
    obs.push_back(std::move(oj));
  }
  dj["obstacles"] = std::move(obs);
  j["domain"] = std::move(dj);
  j["engine"] = cfg.engine;
  j["wos"] = {{"shell_eps", cfg.wos.shell_eps},
              {"max_steps", cfg.wos.max_steps},
              {"n_paths", cfg.wos.n_paths},
              {"safety_factor", cfg.wos.safety_factor}};
  j["fd"] = {{"grid", cfg.fd.grid}, {"tol", cfg.fd.tol}};
  j["quad"] = {{"tol", cfg.quad.tol}};
  j["qhyp"] = {{"grid", cfg.qhyp.grid}, {"stencil_range", cfg.qhyp.stencil_range}};
  j["lattice"] = {{"N", cfg.lattice.N},
                  {"norm", cfg.lattice.norm == LatticeNorm::euclidean ? "euclidean" : "linf"},
                  {"n_walks", cfg.lattice.n_walks}};
  ordered_json pts = ordered_json::array();
  for (const auto& p : cfg.points) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
    pts.push_back(std::move(a));
  }
  j["points"] = std::move(pts);
  j["output"] = {{"dir", cfg.out_dir}, {"format", cfg.format}};
  return j.dump(2) + "\n";
}

BatchOutcome parse_batch_file(const std::string& path) {
  BatchOutcome out;
  std::ifstream f(path);
  if (!f) {
    out.errors.push_back("io: cannot open batch file '" + path + "'");
    return out;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    out.errors.push_back(std::string("syntax: ") + e.what());
    return out;
  }
  if (!j.is_object() || !j.contains("scenarios") || !j["scenarios"].is_array()) {
    out.errors.push_back("$: batch file must be {\"scenarios\": [...]}");
    return out;
  }
  for (size_t i = 0; i < j["scenarios"].size(); ++i) {
    ParseOutcome one = parse_config_json(j["scenarios"][i]);
    for (const auto& e : one.errors)
      out.errors.push_back("scenarios[" + std::to_string(i) + "]." + e);
    if (one.config) out.scenarios.push_back(std::move(*one.config));
  }
  if (!out.errors.empty()) out.scenarios.clear();
  return out;
}

}  // namespace bhp
