#include "bhplab/qhyp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace bhp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

int gcd_int(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }
}  // namespace

double MetricDomain::boundary_dist(const Point& p) const {
  double d = radius - dist(p, center);
  for (const auto& s : obstacles) d = std::min(d, obstacle_dist(s, p));
  return d;
}

QhGraph::QhGraph(const MetricDomain& omega, const QhGraphConfig& cfg) : omega_(&omega) {
  if (cfg.n < 16) throw std::invalid_argument("QhGraph: n must be >= 16");
  if (cfg.stencil_range < 1 || cfg.stencil_range > 4)
    throw std::invalid_argument("QhGraph: stencil_range must be in [1,4]");
  n_ = cfg.n;
  range_ = cfg.stencil_range;
  h_ = 2.0 * omega.radius / n_;
  x0_ = omega.center[0] - omega.radius;
  y0_ = omega.center[1] - omega.radius;

  bdist_.resize(static_cast<size_t>(n_) * static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) bdist_[idx(i, j)] = omega.boundary_dist(node_point(i, j));

  // primitive move directions up to the Chebyshev range
  for (int dj = -range_; dj <= range_; ++dj)
    for (int di = -range_; di <= range_; ++di) {
      if (di == 0 && dj == 0) continue;
      if (gcd_int(di, dj) != 1) continue;
      stencil_.emplace_back(di, dj);
    }
}

double QhGraph::edge_weight(int i, int j, int di, int dj) const {
  // Midpoint rule per crossed cell: sample 1/boundary_dist at sub-step
  // midpoints. Also acts as the obstacle test for moves that would tunnel
  // through thin obstacles (those must be at least ~2h thick to be seen).
  const int m = std::max(std::abs(di), std::abs(dj));
  const double len = h_ * std::sqrt(static_cast<double>(di) * di + static_cast<double>(dj) * dj);
  const Point a = node_point(i, j);
  const double step_x = di * h_, step_y = dj * h_;
  double w = 0.0;
  for (int s = 0; s < m; ++s) {
    const double t = (s + 0.5) / m;
    const Point q{a[0] + t * step_x, a[1] + t * step_y};
    const double d = omega_->boundary_dist(q);
    if (d <= 0.0) return kInf;
    w += (len / m) / d;
  }
  return w;
}

size_t QhGraph::snap(const Point& p) const {
  const int ci = static_cast<int>(std::floor((p[0] - x0_) / h_));
  const int cj = static_cast<int>(std::floor((p[1] - y0_) / h_));
  double best = kInf;
  size_t best_idx = 0;
  bool found = false;
  for (int dj = -5; dj <= 5; ++dj)
    for (int di = -5; di <= 5; ++di) {
      const int i = ci + di, j = cj + dj;
      if (i < 0 || j < 0 || i >= n_ || j >= n_) continue;
      if (!interior(i, j)) continue;
      const double d = dist(p, node_point(i, j));
      if (d < best) {
        best = d;
        best_idx = idx(i, j);
        found = true;
      }
    }
  if (!found) throw std::invalid_argument("QhGraph::snap: no interior node near the point");
  return best_idx;
}

std::vector<double> QhGraph::distance_field(size_t source) const {
  std::vector<double> dist_out(bdist_.size(), kInf);
  if (bdist_[source] <= 0.0)
    throw std::invalid_argument("QhGraph::distance_field: source is not interior");

  using Entry = std::pair<double, size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist_out[source] = 0.0;
  heap.push({0.0, source});

  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist_out[u]) continue;  // stale entry
    const int i = static_cast<int>(u % static_cast<size_t>(n_));
    const int j = static_cast<int>(u / static_cast<size_t>(n_));
    for (const auto& [di, dj] : stencil_) {
      const int vi = i + di, vj = j + dj;
      if (vi < 0 || vj < 0 || vi >= n_ || vj >= n_) continue;
      const size_t v = idx(vi, vj);
      if (bdist_[v] <= 0.0) continue;
      const double w = edge_weight(i, j, di, dj);
      if (!(w < kInf)) continue;
      const double dv = du + w;
      if (dv < dist_out[v]) {
        dist_out[v] = dv;
        heap.push({dv, v});
      }
    }
  }
  return dist_out;
}

double qh_distance(const MetricDomain& omega, const Point& x, const Point& y,
                   const QhGraphConfig& cfg) {
  QhGraph g(omega, cfg);
  const size_t sx = g.snap(x);
  const size_t sy = g.snap(y);
  if (sx == sy) return 0.0;
  // canonical source keeps qh_distance(x,y) == qh_distance(y,x) bit-exact
  const size_t src = std::min(sx, sy);
  const size_t dst = std::max(sx, sy);
  const double d = g.distance_field(src)[dst];
  if (!(d < kInf)) throw std::invalid_argument("qh_distance: endpoints not connected in Omega");
  return d;
}

QhRefined qh_distance_refined(const MetricDomain& omega, const Point& x, const Point& y,
                              const QhGraphConfig& cfg) {
  QhRefined out;
  out.value = qh_distance(omega, x, y, cfg);
  QhGraphConfig half = cfg;
  half.n = std::max(16, cfg.n / 2);
  out.coarse = qh_distance(omega, x, y, half);
  out.error_estimate = std::abs(out.value - out.coarse);
  return out;
}

std::vector<Point> interior_samples(const MetricDomain& omega, const QhGraphConfig& cfg,
                                    size_t max_count) {
  QhGraph g(omega, cfg);
  std::vector<Point> all;
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i)
      if (g.interior(i, j)) all.push_back(g.node_point(i, j));
  if (all.size() <= max_count) return all;
  std::vector<Point> out;
  out.reserve(max_count);
  const double stride = static_cast<double>(all.size()) / static_cast<double>(max_count);
  for (size_t k = 0; k < max_count; ++k) out.push_back(all[static_cast<size_t>(k * stride)]);
  return out;
}

namespace {

struct FitData {
  std::vector<double> t;  // log(d(x0)/d(x))
  std::vector<double> k;  // graph distance
};

QhbcFit fit_from_data(const FitData& data) {
  QhbcFit fit;
  fit.n_samples = static_cast<int>(data.t.size());
  if (data.t.empty()) throw std::invalid_argument("qhbc fit: no usable samples");

  if (data.t.size() == 1) {
    fit.c1 = 0.0;
    fit.c2 = data.k[0];
    fit.max_violation = 0.0;
    fit.decades = 0.0;
    return fit;
  }

  const auto [tmin, tmax] = std::minmax_element(data.t.begin(), data.t.end());
  fit.decades = (*tmax - *tmin) / std::log(10.0);
  if (fit.decades < 2.0)
    throw std::invalid_argument("qhbc fit: samples span less than two decades of boundary distance");

  const double n = static_cast<double>(data.t.size());
  double mt = 0.0, mk = 0.0;
  for (size_t i = 0; i < data.t.size(); ++i) {
    mt += data.t[i];
    mk += data.k[i];
  }
  mt /= n;
  mk /= n;
  double var = 0.0, cov = 0.0;
  for (size_t i = 0; i < data.t.size(); ++i) {
    var += (data.t[i] - mt) * (data.t[i] - mt);
    cov += (data.t[i] - mt) * (data.k[i] - mk);
  }
  const double slope = var > 0.0 ? cov / var : 0.0;
  const double intercept = mk - slope * mt;

  fit.c1 = std::max(slope, 0.0);
  double c2 = -kInf, viol = -kInf;
  for (size_t i = 0; i < data.t.size(); ++i) {
    c2 = std::max(c2, data.k[i] - fit.c1 * data.t[i]);
    viol = std::max(viol, data.k[i] - (slope * data.t[i] + intercept));
  }
  fit.c2 = c2;
  fit.max_violation = viol;
  return fit;
}

QhbcFit fit_on_graph(const QhGraph& g, size_t x0_node, const std::vector<size_t>& sample_nodes,
                     bool skip_unreachable) {
  const std::vector<double> field = g.distance_field(x0_node);
  const double d0 = g.node_boundary_dist(x0_node);
  FitData data;
  data.t.reserve(sample_nodes.size());
  for (size_t c : sample_nodes) {
    if (!(field[c] < kInf)) {
      if (skip_unreachable) continue;
      throw std::invalid_argument("qhbc fit: sample not connected to x0");
    }
    data.t.push_back(std::log(d0 / g.node_boundary_dist(c)));
    data.k.push_back(field[c]);
  }
  return fit_from_data(data);
}

}  // namespace

QhbcFit qhbc_fit(const MetricDomain& omega, const Point& x0, const std::vector<Point>& samples,
                 const QhGraphConfig& cfg) {
  QhGraph g(omega, cfg);
  const size_t x0_node = g.snap(x0);
  std::vector<size_t> nodes;
  nodes.reserve(samples.size());
  for (const auto& p : samples) nodes.push_back(g.snap(p));
  return fit_on_graph(g, x0_node, nodes, /*skip_unreachable=*/false);
}

std::vector<GrowthIntegral> exp_growth_integral_sweep(const MetricDomain& omega, const Point& x0,
                                                      const std::vector<double>& taus,
                                                      const QhGraphConfig& cfg) {
  for (double tau : taus)
    if (tau < 0.0) throw std::invalid_argument("exp_growth_integral: tau must be >= 0");

  auto sum_at = [&](int n) {
    QhGraphConfig c = cfg;
    c.n = n;
    QhGraph g(omega, c);
    const std::vector<double> field = g.distance_field(g.snap(x0));
    std::vector<double> sums(taus.size(), 0.0);
    const double cell = g.h() * g.h();
    for (size_t node = 0; node < g.node_count(); ++node) {
      if (!(g.node_boundary_dist(node) > 0.0)) continue;
      if (!(field[node] < kInf)) continue;  // other components carry no mass
      for (size_t t = 0; t < taus.size(); ++t) sums[t] += cell * std::exp(taus[t] * field[node]);
    }
    return sums;
  };

  const std::vector<double> fine = sum_at(cfg.n);
  const std::vector<double> coarse = sum_at(std::max(16, cfg.n / 2));
  std::vector<GrowthIntegral> out(taus.size());
  for (size_t t = 0; t < taus.size(); ++t) {
    out[t].value = fine[t];
    out[t].coarse = coarse[t];
    out[t].diverges = fine[t] >= 2.0 * coarse[t];
  }
  return out;
}

GrowthIntegral exp_growth_integral(const MetricDomain& omega, const Point& x0, double tau,
                                   const QhGraphConfig& cfg) {
  return exp_growth_integral_sweep(omega, x0, {tau}, cfg)[0];
}

std::optional<std::pair<double, double>> hitting_angles(const Domain& k_set, double r, double eps,
                                                        double angle_tol) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("hitting_angles: r must be in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("hitting_angles: eps must be in (0,1)");
  if (k_set.dimension() != 2) throw std::invalid_argument("hitting_angles: 2D only");
  if (k_set.obstacles().empty()) return std::nullopt;

  const double reach = r * eps;
  auto hit = [&](double theta) {
    const Point p{r * std::cos(theta), r * std::sin(theta)};
    return dist_to_obstacles(p, k_set) <= reach;
  };

  auto locate = [&](double sign) -> std::optional<double> {
    const int m = 1 << 13;
    const double step = sign * 2.0 * kPi / m;
    double prev = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double theta = i * step;
      if (hit(theta)) {
        // bisect [prev, theta]; hit(prev) is false (or prev == 0, excluded
        // from the angle range, which the midpoint limit handles).
        double lo = prev, hi = theta;
        while (std::abs(hi - lo) > angle_tol) {
          const double mid = 0.5 * (lo + hi);
          (hit(mid) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
      }
      prev = theta;
    }
    return std::nullopt;
  };

  const auto theta1 = locate(+1.0);
  if (!theta1) return std::nullopt;
  const auto theta2 = locate(-1.0);
  if (!theta2) return std::nullopt;  // cannot happen: the scan is symmetric over the full circle
  return std::make_pair(*theta1, *theta2);
}

GoodSetReport good_set_check(const Domain& k_set, double r, double eps,
                             const GoodSetParams& params) {
  const auto angles = hitting_angles(k_set, r, eps);
  if (!angles)
    throw std::invalid_argument("good_set_check: no hitting angle (K does not meet the test radius)");

  GoodSetReport rep;
  rep.r = r;
  rep.eps = eps;
  rep.theta1 = angles->first;
  rep.theta2 = angles->second;

  const double reach = r * eps;
  auto run_root = [&](double theta, Point& root_out, QhbcFit& fit_out) {
    const Point hit_center{r * std::cos(theta), r * std::sin(theta)};
    const Point root = closest_obstacle_point(hit_center, k_set);
    if (dist(root, hit_center) > reach * (1.0 + 1e-6) + 1e-12)
      throw std::runtime_error("good_set_check: root search left the closed hitting ball");
    root_out = root;

    MetricDomain local;
    local.center = root;
    local.radius = reach;
    local.obstacles = k_set.obstacles();

    QhGraph g(local, params.graph);
    // Component selection: start from a probe between the root and the
    // hitting center, i.e. on the side of K the tube actually sees.
    const Point probe = root + 0.85 * (hit_center - root);
    const size_t probe_node = g.snap(probe);
    const std::vector<double> comp = g.distance_field(probe_node);

    size_t x0_node = probe_node;
    double deepest = 0.0;
    std::vector<size_t> component_nodes;
    for (size_t c = 0; c < g.node_count(); ++c) {
      if (!(comp[c] < kInf)) continue;
      component_nodes.push_back(c);
      if (g.node_boundary_dist(c) > deepest) {
        deepest = g.node_boundary_dist(c);
        x0_node = c;
      }
    }
    if (component_nodes.size() > params.max_samples) {
      std::vector<size_t> strided;
      strided.reserve(params.max_samples);
      const double stride =
          static_cast<double>(component_nodes.size()) / static_cast<double>(params.max_samples);
      for (size_t k = 0; k < params.max_samples; ++k)
        strided.push_back(component_nodes[static_cast<size_t>(k * stride)]);
      component_nodes = std::move(strided);
    }
    fit_out = fit_on_graph(g, x0_node, component_nodes, /*skip_unreachable=*/true);
  };

  run_root(rep.theta1, rep.root1, rep.fit1);
  run_root(rep.theta2, rep.root2, rep.fit2);

  auto ok = [&](const QhbcFit& f) {
    return std::isfinite(f.c1) && std::isfinite(f.c2) && f.c1 <= params.max_c1 &&
           f.max_violation <= params.max_violation;
  };
  rep.is_good = ok(rep.fit1) && ok(rep.fit2);
  return rep;
}

}  // namespace bhp
