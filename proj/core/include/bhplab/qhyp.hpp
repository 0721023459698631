#pragma once

// Quasihyperbolic metric machinery (2D): k_Omega as weighted shortest paths
// over a raster graph, QHBC envelope fitting, the exponential growth
// integral, hitting angles at radius r, and (r,eps)-good verification.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bhplab/geometry.hpp"

namespace bhp {

/// Omega = B(center, radius) - obstacles, in the plane.
struct MetricDomain {
  Point center{0.0, 0.0};
  double radius = 1.0;
  std::vector<ObstacleShape> obstacles;

  /// Distance to the boundary of Omega (outer circle or obstacle set).
  double boundary_dist(const Point& p) const;
  bool contains(const Point& p) const { return boundary_dist(p) > 0.0; }
};

struct QhGraphConfig {
  int n = 512;  // raster cells per side over the bounding square of Omega
  /// Chebyshev range of the move stencil. 1 gives the plain 8-neighbor
  /// graph, whose shortest paths overshoot the metric by up to ~8% in
  /// off-lattice directions regardless of h; the default range 3 (32 move
  /// directions) brings the direction-quantization error under 0.3%.
  int stencil_range = 3;
};

/// Raster shortest-path graph for k_Omega. Nodes are interior cell centers;
/// an edge weight is the Euclidean step length integrated against
/// 1/boundary_dist at sub-step midpoints (midpoint rule per crossed cell).
class QhGraph {
 public:
  QhGraph(const MetricDomain& omega, const QhGraphConfig& cfg);

  int n() const { return n_; }
  double h() const { return h_; }
  size_t node_count() const { return bdist_.size(); }

  bool interior(int i, int j) const { return bdist_[idx(i, j)] > 0.0; }
  Point node_point(int i, int j) const {
    return Point{x0_ + (i + 0.5) * h_, y0_ + (j + 0.5) * h_};
  }
  double node_boundary_dist(size_t c) const { return bdist_[c]; }
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) + static_cast<size_t>(n_) * static_cast<size_t>(j);
  }

  /// Nearest interior node to p (searched over a 5-cell margin); throws if
  /// none is found.
  size_t snap(const Point& p) const;

  /// Dijkstra distances from a source node to every node; unreachable nodes
  /// (other components, obstacle cells) hold +inf.
  std::vector<double> distance_field(size_t source) const;

 private:
  const MetricDomain* omega_;
  int n_ = 0;
  int range_ = 1;
  double h_ = 0.0;
  double x0_ = 0.0, y0_ = 0.0;  // lower corner of the raster square
  std::vector<double> bdist_;   // boundary distance at cell centers; <= 0 outside
  std::vector<std::pair<int, int>> stencil_;

  double edge_weight(int i, int j, int di, int dj) const;
};

/// Shortest-path value of k_Omega(x, y) at the given resolution. Symmetric
/// by construction (the Dijkstra source is chosen canonically).
double qh_distance(const MetricDomain& omega, const Point& x, const Point& y,
                   const QhGraphConfig& cfg = {});

struct QhRefined {
  double value = 0.0;           // at cfg.n
  double coarse = 0.0;          // at cfg.n / 2
  double error_estimate = 0.0;  // |value - coarse|
};

/// qh_distance at cfg.n together with a convergence estimate from cfg.n/2.
QhRefined qh_distance_refined(const MetricDomain& omega, const Point& x, const Point& y,
                              const QhGraphConfig& cfg = {});

/// Uniformly strided interior cell centers, usable as QHBC fit samples.
std::vector<Point> interior_samples(const MetricDomain& omega, const QhGraphConfig& cfg,
                                    size_t max_count);

struct QhbcFit {
  double c1 = 0.0;
  double c2 = 0.0;
  /// Worst positive deviation of k above the least-squares line; stays O(1)
  /// when k really grows logarithmically in 1/d and blows up on cusps.
  double max_violation = 0.0;
  int n_samples = 0;
  double decades = 0.0;  // dynamic range of d(x, boundary) over the samples
};

/// Envelope fit of k_Omega(x, x0) <= C1 log(d(x0)/d(x)) + C2 over the given
/// samples: C1 is the least-squares slope (clamped at 0), C2 the minimal
/// intercept making the bound hold on every sample. A single sample yields
/// the degenerate C1 = 0 fit. Throws if the samples span less than two
/// decades of boundary distance (single-sample case excepted) or are not
/// connected to x0.
QhbcFit qhbc_fit(const MetricDomain& omega, const Point& x0, const std::vector<Point>& samples,
                 const QhGraphConfig& cfg = {});

struct GrowthIntegral {
  double value = 0.0;   // at cfg.n
  double coarse = 0.0;  // at cfg.n / 2
  bool diverges = false;  // value at least doubled under refinement
};

/// Cell-wise sum of exp(tau * k_Omega(x, x0)) over Omega, evaluated at cfg.n
/// and cfg.n/2; the divergence flag trips when refinement doubles the value.
GrowthIntegral exp_growth_integral(const MetricDomain& omega, const Point& x0, double tau,
                                   const QhGraphConfig& cfg = {});

/// Sweep version reusing one distance field per resolution.
std::vector<GrowthIntegral> exp_growth_integral_sweep(const MetricDomain& omega, const Point& x0,
                                                      const std::vector<double>& taus,
                                                      const QhGraphConfig& cfg = {});

/// First/last angles at which the closed ball of radius r*eps around
/// r*e^{i theta} meets K: theta1 = inf over (0, 2pi), theta2 = sup over
/// (-2pi, 0), each located by scan + bisection to the angular tolerance.
/// nullopt when no angle in (0, 2pi) meets K.
std::optional<std::pair<double, double>> hitting_angles(const Domain& k_set, double r, double eps,
                                                        double angle_tol = 1e-6);

struct GoodSetParams {
  QhGraphConfig graph{256, 3};
  double max_c1 = 8.0;         // fit acceptance thresholds
  double max_violation = 2.5;
  size_t max_samples = 4000;
};

struct GoodSetReport {
  double r = 0.0, eps = 0.0;
  double theta1 = 0.0, theta2 = 0.0;
  Point root1{0.0, 0.0}, root2{0.0, 0.0};
  QhbcFit fit1, fit2;
  bool is_good = false;
};

/// Locates the roots (closest obstacle points to r*e^{i theta_i}) and fits
/// the QHBC on B(root_i, r*eps) - K. The fit runs on the connected component
/// facing the hitting direction; components of the local ball cut off behind
/// K play no role in the Harnack chains the good-set notion feeds.
GoodSetReport good_set_check(const Domain& k_set, double r, double eps,
                             const GoodSetParams& params = {});

}  // namespace bhp
