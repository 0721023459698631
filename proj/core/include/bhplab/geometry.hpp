#pragma once

// d-dimensional points, obstacle primitives with exact distance queries,
// the domain D = B(0,R) - K, and axis cones. Everything here is immutable
// after construction and safe to share across threads.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

namespace bhp {

/// Fixed-capacity point in R^d, 2 <= d <= 10. Kept inline (no heap) because
/// walk-on-spheres touches millions of these per run.
class Point {
 public:
  static constexpr int kMaxDim = 10;

  Point() = default;
  explicit Point(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Point: dim out of range");
  }
  Point(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
    if (dim_ < 1 || dim_ > kMaxDim) throw std::invalid_argument("Point: dim out of range");
    std::copy(xs.begin(), xs.end(), c_.begin());
  }

  static Point zero(int dim) { return Point(dim); }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<size_t>(i)]; }

  const double* begin() const { return c_.data(); }
  const double* end() const { return c_.data() + dim_; }
  double* begin() { return c_.data(); }
  double* end() { return c_.data() + dim_; }

  Point& operator+=(const Point& r) {
    for (int i = 0; i < dim_; ++i) c_[static_cast<size_t>(i)] += r[i];
    return *this;
  }
  Point& operator-=(const Point& r) {
    for (int i = 0; i < dim_; ++i) c_[static_cast<size_t>(i)] -= r[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[static_cast<size_t>(i)] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Point& p) { return dot(p, p); }
inline double norm(const Point& p) { return std::sqrt(norm_sq(p)); }
inline double dist(const Point& a, const Point& b) { return norm(a - b); }

/// Zeroes every coordinate except the first: the projection onto the x1-axis.
inline Point project_to_axis(const Point& p) {
  Point q(p.dim());
  q[0] = p[0];
  return q;
}

// ---------------------------------------------------------------------------
// Obstacle primitives. Each one provides an exact Euclidean distance; 0 means
// the query point lies on (or inside) the obstacle.
// ---------------------------------------------------------------------------

struct BallObstacle {
  Point center;
  double radius = 0.0;
};

/// Segment [a,b], optionally thickened into a stadium of the given radius.
/// Thickness 0 gives a genuine slit (usable by the continuous engine; the FD
/// oracle rasterizes it with sub-cell dilation).
struct SegmentObstacle {
  Point a;
  Point b;
  double thickness = 0.0;
};

struct PolylineObstacle {
  std::vector<Point> vertices;  // >= 2
  double thickness = 0.0;
};

/// Flat disc { x : x[axis] = center[axis], inner_radius <= |x - center| <= radius },
/// i.e. a radius-`radius` disc in the hyperplane normal to `axis`, with an
/// optional concentric hole of radius `inner_radius`.
struct HyperplaneDiscObstacle {
  Point center;
  int axis = 0;
  double radius = 0.0;
  double inner_radius = 0.0;
};

using ObstacleShape =
    std::variant<BallObstacle, SegmentObstacle, PolylineObstacle, HyperplaneDiscObstacle>;

namespace detail {

inline double segment_dist(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
  return dist(p, a + t * ab);
}

inline Point segment_closest(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
  return a + t * ab;
}

}  // namespace detail

inline int obstacle_dim(const ObstacleShape& s) {
  return std::visit([](const auto& o) {
    using T = std::decay_t<decltype(o)>;
    if constexpr (std::is_same_v<T, BallObstacle>) return o.center.dim();
    else if constexpr (std::is_same_v<T, SegmentObstacle>) return o.a.dim();
    else if constexpr (std::is_same_v<T, PolylineObstacle>) return o.vertices.front().dim();
    else return o.center.dim();
  }, s);
}

inline double obstacle_dist(const ObstacleShape& s, const Point& p) {
  return std::visit([&p](const auto& o) -> double {
    using T = std::decay_t<decltype(o)>;
    if constexpr (std::is_same_v<T, BallObstacle>) {
      return std::max(0.0, dist(p, o.center) - o.radius);
    } else if constexpr (std::is_same_v<T, SegmentObstacle>) {
      return std::max(0.0, detail::segment_dist(p, o.a, o.b) - o.thickness);
    } else if constexpr (std::is_same_v<T, PolylineObstacle>) {
      double best = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i + 1 < o.vertices.size(); ++i)
        best = std::min(best, detail::segment_dist(p, o.vertices[i], o.vertices[i + 1]));
      return std::max(0.0, best - o.thickness);
    } else {  // HyperplaneDiscObstacle
      const double axial = p[o.axis] - o.center[o.axis];
      double rho_sq = 0.0;
      for (int i = 0; i < p.dim(); ++i) {
        if (i == o.axis) continue;
        const double di = p[i] - o.center[i];
        rho_sq += di * di;
      }
      const double rho = std::sqrt(rho_sq);
      double radial = 0.0;
      if (rho > o.radius) radial = rho - o.radius;
      else if (rho < o.inner_radius) radial = o.inner_radius - rho;
      return std::hypot(axial, radial);
    }
  }, s);
}

/// Nearest point of the obstacle to p. For p strictly outside the obstacle
/// this is the unique (or canonical) closest boundary point; for p inside,
/// returns p itself.
inline Point obstacle_closest_point(const ObstacleShape& s, const Point& p) {
  return std::visit([&p](const auto& o) -> Point {
    using T = std::decay_t<decltype(o)>;
    if constexpr (std::is_same_v<T, BallObstacle>) {
      const Point v = p - o.center;
      const double r = norm(v);
      if (r <= o.radius) return p;
      return o.center + (o.radius / r) * v;
    } else if constexpr (std::is_same_v<T, SegmentObstacle>) {
      const Point q = detail::segment_closest(p, o.a, o.b);
      const double r = dist(p, q);
      if (r <= o.thickness) return p;
      if (o.thickness == 0.0 || r == 0.0) return q;
      return q + (o.thickness / r) * (p - q);
    } else if constexpr (std::is_same_v<T, PolylineObstacle>) {
      double best = std::numeric_limits<double>::infinity();
      Point q = o.vertices.front();
      for (size_t i = 0; i + 1 < o.vertices.size(); ++i) {
        const Point c = detail::segment_closest(p, o.vertices[i], o.vertices[i + 1]);
        const double d = dist(p, c);
        if (d < best) { best = d; q = c; }
      }
      if (best <= o.thickness) return p;
      if (o.thickness == 0.0 || best == 0.0) return q;
      return q + (o.thickness / best) * (p - q);
    } else {  // HyperplaneDiscObstacle
      double rho_sq = 0.0;
      for (int i = 0; i < p.dim(); ++i) {
        if (i == o.axis) continue;
        const double di = p[i] - o.center[i];
        rho_sq += di * di;
      }
      const double rho = std::sqrt(rho_sq);
      const double rho_cl = std::clamp(rho, o.inner_radius, o.radius);
      Point q = o.center;
      if (rho > 0.0) {
        const double f = rho_cl / rho;
        for (int i = 0; i < p.dim(); ++i) {
          if (i == o.axis) continue;
          q[i] = o.center[i] + f * (p[i] - o.center[i]);
        }
      } else if (rho_cl > 0.0) {
        // p sits on the axis; any radial direction is closest, pick the first.
        int j = (o.axis == 0) ? 1 : 0;
        q[j] += rho_cl;
      }
      return q;
    }
  }, s);
}

// ---------------------------------------------------------------------------
// Domain D = B(0, outer_radius) - K, with K a union of primitives.
// Obstacles are expected to lie inside the closed ball; pieces poking outside
// are irrelevant for interior queries and are ignored by convention.
// ---------------------------------------------------------------------------

class Domain {
 public:
  Domain(int dimension, std::vector<ObstacleShape> obstacles, double outer_radius = 1.0)
      : dimension_(dimension), outer_radius_(outer_radius), obstacles_(std::move(obstacles)) {
    if (dimension_ < 2 || dimension_ > Point::kMaxDim)
      throw std::invalid_argument("Domain: dimension must be in [2,10]");
    if (!(outer_radius_ > 0.0) || !std::isfinite(outer_radius_))
      throw std::invalid_argument("Domain: outer_radius must be positive and finite");
    for (const auto& s : obstacles_) {
      if (obstacle_dim(s) != dimension_)
        throw std::invalid_argument("Domain: obstacle dimension mismatch");
      validate_shape(s);
    }
  }

  int dimension() const { return dimension_; }
  double outer_radius() const { return outer_radius_; }
  const std::vector<ObstacleShape>& obstacles() const { return obstacles_; }

 private:
  static void validate_shape(const ObstacleShape& s) {
    std::visit([](const auto& o) {
      using T = std::decay_t<decltype(o)>;
      if constexpr (std::is_same_v<T, BallObstacle>) {
        if (!(o.radius > 0.0) || !std::isfinite(o.radius))
          throw std::invalid_argument("BallObstacle: radius must be positive and finite");
      } else if constexpr (std::is_same_v<T, SegmentObstacle>) {
        if (o.thickness < 0.0 || !std::isfinite(o.thickness))
          throw std::invalid_argument("SegmentObstacle: thickness must be >= 0");
      } else if constexpr (std::is_same_v<T, PolylineObstacle>) {
        if (o.vertices.size() < 2)
          throw std::invalid_argument("PolylineObstacle: needs >= 2 vertices");
        if (o.thickness < 0.0 || !std::isfinite(o.thickness))
          throw std::invalid_argument("PolylineObstacle: thickness must be >= 0");
        for (const auto& v : o.vertices)
          if (v.dim() != o.vertices.front().dim())
            throw std::invalid_argument("PolylineObstacle: mixed vertex dimensions");
      } else {
        if (!(o.radius > 0.0)) throw std::invalid_argument("HyperplaneDiscObstacle: radius must be > 0");
        if (o.inner_radius < 0.0 || o.inner_radius >= o.radius)
          throw std::invalid_argument("HyperplaneDiscObstacle: need 0 <= inner_radius < radius");
        if (o.axis < 0 || o.axis >= o.center.dim())
          throw std::invalid_argument("HyperplaneDiscObstacle: axis out of range");
      }
    }, s);
  }

  int dimension_;
  double outer_radius_;
  std::vector<ObstacleShape> obstacles_;
};

/// Exact distance from p to the obstacle set K; +inf when K is empty,
/// 0 iff p lies in K.
inline double dist_to_obstacles(const Point& p, const Domain& dom) {
  if (p.dim() != dom.dimension())
    throw std::invalid_argument("dist_to_obstacles: point/domain dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : dom.obstacles()) best = std::min(best, obstacle_dist(s, p));
  return best;
}

/// Nearest obstacle point to p (see obstacle_closest_point). Requires a
/// non-empty obstacle set.
inline Point closest_obstacle_point(const Point& p, const Domain& dom) {
  if (dom.obstacles().empty())
    throw std::invalid_argument("closest_obstacle_point: domain has no obstacles");
  double best = std::numeric_limits<double>::infinity();
  Point q = p;
  for (const auto& s : dom.obstacles()) {
    const double d = obstacle_dist(s, p);
    if (d < best) { best = d; q = obstacle_closest_point(s, p); }
  }
  return q;
}

/// Radius of the largest ball centered at p that stays inside D:
/// min(outer_radius - |p|, dist to K). Throws if p is outside the closed ball.
inline double wos_radius(const Point& p, const Domain& dom) {
  const double to_sphere = dom.outer_radius() - norm(p);
  if (to_sphere < 0.0) throw std::invalid_argument("wos_radius: point outside the closed ball");
  return std::min(to_sphere, dist_to_obstacles(p, dom));
}

/// True iff p lies in the open domain D = B(0,R) - K.
inline bool in_domain(const Point& p, const Domain& dom) {
  return norm(p) < dom.outer_radius() && dist_to_obstacles(p, dom) > 0.0;
}

// ---------------------------------------------------------------------------
// Axis cone W_alpha = { z : |z - pi_1(z)| < z[axis] * tan(alpha) }.
// ---------------------------------------------------------------------------

struct ConeSpec {
  double half_angle = 0.0;          // radians, (0, pi/2]
  int axis = 0;

  ConeSpec() = default;
  explicit ConeSpec(double alpha, int ax = 0) : half_angle(alpha), axis(ax) {
    if (!(alpha > 0.0) || alpha > std::numbers::pi / 2 + 1e-15)
      throw std::invalid_argument("ConeSpec: half_angle must be in (0, pi/2]");
  }
};

/// Strict cone membership. Points with non-positive axis coordinate are
/// always outside; at half_angle = pi/2 the cone degenerates to the open
/// half-space.
inline bool in_cone(const Point& p, const ConeSpec& cone) {
  const double x1 = p[cone.axis];
  if (x1 <= 0.0) return false;
  if (cone.half_angle >= std::numbers::pi / 2) return true;
  double perp_sq = 0.0;
  for (int i = 0; i < p.dim(); ++i) {
    if (i == cone.axis) continue;
    perp_sq += p[i] * p[i];
  }
  const double t = std::tan(cone.half_angle);
  return perp_sq < (x1 * t) * (x1 * t);
}

}  // namespace bhp
