#include "bhplab/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bhp {

namespace {

void validate_cfg(const WosConfig& cfg, const Domain& dom) {
  if (!(cfg.shell_eps > 0.0) || cfg.shell_eps >= 1e-2 * dom.outer_radius())
    throw std::invalid_argument("WosConfig: shell_eps must be in (0, 1e-2 * outer_radius)");
  if (cfg.max_steps < 1) throw std::invalid_argument("WosConfig: max_steps must be >= 1");
  if (!(cfg.safety_factor > 0.0) || cfg.safety_factor > 1.0)
    throw std::invalid_argument("WosConfig: safety_factor must be in (0, 1]");
  if (cfg.n_paths < 0) throw std::invalid_argument("WosConfig: n_paths must be >= 0");
}

}  // namespace

Point sample_unit_sphere(RngStream& rng, int d) {
  if (d < 2 || d > Point::kMaxDim)
    throw std::invalid_argument("sample_unit_sphere: d must be in [2,10]");
  Point v(d);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (int i = 0; i < d; ++i) {
      v[i] = rng.normal();
      n2 += v[i] * v[i];
    }
  } while (n2 < 1e-300);
  v *= 1.0 / std::sqrt(n2);
  return v;
}

ExitRecord wos_exit(const Point& start, const Domain& dom, const WosConfig& cfg, RngStream& rng) {
  const int d = dom.dimension();
  const double R = dom.outer_radius();
  Point p = start;
  for (int step = 0; step < cfg.max_steps; ++step) {
    // Obstacle capture first: within the shell of both boundaries counts as
    // hitting K.
    const double d_obs = dist_to_obstacles(p, dom);
    if (d_obs <= cfg.shell_eps) return {ExitKind::obstacle, p, step};
    const double pn = norm(p);
    const double d_sph = R - pn;
    if (d_sph <= cfg.shell_eps) {
      Point exit = p;
      exit *= R / pn;
      return {ExitKind::sphere, exit, step};
    }
    const double r = cfg.safety_factor * std::min(d_sph, d_obs);
    p += r * sample_unit_sphere(rng, d);
  }
  return {ExitKind::censored, p, cfg.max_steps};
}

EnsembleCounts run_wos_ensemble(const Point& start, const Domain& dom, const WosConfig& cfg,
                                uint64_t seed, uint64_t stream_offset,
                                const std::function<uint32_t(const ExitRecord&)>& classify) {
  validate_cfg(cfg, dom);
  if (start.dim() != dom.dimension())
    throw std::invalid_argument("run_wos_ensemble: start/domain dimension mismatch");
  if (!(wos_radius(start, dom) > cfg.shell_eps))
    throw std::invalid_argument("run_wos_ensemble: start must be interior with clearance > shell_eps");

  const int64_t n = cfg.n_paths;
  const int64_t blocks = static_cast<int64_t>(kEnsembleBlocks);

  // Per-block tallies; the block partition is fixed so the aggregate is
  // independent of how blocks are scheduled over threads.
  std::vector<std::array<int64_t, 5>> tallies(static_cast<size_t>(blocks));

#pragma omp parallel for schedule(dynamic)
  for (int64_t b = 0; b < blocks; ++b) {
    const int64_t lo = b * n / blocks;
    const int64_t hi = (b + 1) * n / blocks;
    if (lo == hi) continue;
    RngStream rng(seed, stream_offset + static_cast<uint64_t>(b));
    auto& t = tallies[static_cast<size_t>(b)];
    for (int64_t i = lo; i < hi; ++i) {
      const ExitRecord rec = wos_exit(start, dom, cfg, rng);
      if (rec.kind == ExitKind::censored) {
        ++t[4];
        continue;
      }
      const uint32_t bits = classify(rec);
      for (int k = 0; k < 4; ++k)
        if (bits & (1u << k)) ++t[static_cast<size_t>(k)];
    }
  }

  EnsembleCounts out;
  out.n = n;
  for (const auto& t : tallies) {
    for (int k = 0; k < 4; ++k) out.counts[static_cast<size_t>(k)] += t[static_cast<size_t>(k)];
    out.censored += t[4];
  }
  return out;
}

PairedEstimate estimate_uv(const Point& start, const Domain& dom, const ConeSpec& cone,
                           const WosConfig& cfg, uint64_t seed, uint64_t stream_offset) {
  auto classify = [&dom, &cone](const ExitRecord& rec) -> uint32_t {
    if (rec.kind != ExitKind::sphere) return 0;
    // Sphere exits landing on K (possible only when K touches the sphere)
    // count for neither u nor v.
    if (!dom.obstacles().empty() && dist_to_obstacles(rec.exit_point, dom) <= 0.0) return 0;
    uint32_t bits = 1u;  // v-success
    if (in_cone(rec.exit_point, cone)) bits |= 2u;
    return bits;
  };
  const EnsembleCounts c = run_wos_ensemble(start, dom, cfg, seed, stream_offset, classify);

  PairedEstimate est;
  est.n = c.n;
  est.count_v = c.counts[0];
  est.count_u = c.counts[1];
  est.censored = c.censored;
  if (c.n > 0 && c.censored * 100 > c.n)
    throw std::runtime_error("estimate_uv: censored paths exceed 1% of the ensemble (" +
                             std::to_string(c.censored) + "/" + std::to_string(c.n) + ")");
  est.v_hat = c.n > 0 ? static_cast<double>(est.count_v) / static_cast<double>(c.n) : 0.0;
  est.u_hat = c.n > 0 ? static_cast<double>(est.count_u) / static_cast<double>(c.n) : 0.0;
  est.ci_v = wilson_interval(est.count_v, c.n);
  est.ci_u = wilson_interval(est.count_u, c.n);
  return est;
}

RatioBoundReport estimate_ratio_bound(const std::vector<Point>& points, const Domain& dom,
                                      const ConeSpec& cone, const WosConfig& cfg, uint64_t seed) {
  const double half = 0.5 * dom.outer_radius();
  for (const auto& p : points) {
    if (norm(p) >= half)
      throw std::invalid_argument("estimate_ratio_bound: points must lie in B(0, R/2)");
    if (!(p[0] > 0.0))
      throw std::invalid_argument("estimate_ratio_bound: points must have positive x1");
    if (!in_domain(p, dom))
      throw std::invalid_argument("estimate_ratio_bound: point not inside the domain");
  }

  RatioBoundReport rep;
  rep.rows.reserve(points.size());
  uint64_t offset = 0;
  for (const auto& p : points) {
    RatioBoundRow row{p, estimate_uv(p, dom, cone, cfg, seed, offset)};
    offset += kEnsembleBlocks;
    rep.rows.push_back(std::move(row));
  }

  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  double lo_min = std::numeric_limits<double>::infinity();
  double hi_max = 0.0;
  for (const auto& row : rep.rows) {
    const double r = row.est.ratio();
    const Interval ci = row.est.ratio_ci();
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    lo_min = std::min(lo_min, ci.lo);
    hi_max = std::max(hi_max, ci.hi);
  }
  if (rep.rows.empty()) {
    rep.min_ratio = 0.0;
    rep.worst_double_ratio = 0.0;
    rep.worst_double_ratio_hi = 0.0;
    return rep;
  }
  rep.min_ratio = rmin;
  rep.worst_double_ratio = rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity();
  rep.worst_double_ratio_hi =
      lo_min > 0.0 ? hi_max / lo_min : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace bhp
