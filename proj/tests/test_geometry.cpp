#include "bhplab/geometry.hpp"

#include <cmath>
#include <numbers>

#include "bhplab/rng.hpp"
#include "doctest.h"

using namespace bhp;

namespace {

Point random_in_ball(RngStream& rng, int d, double rmax = 0.999) {
  Point p(d);
  for (;;) {
    for (int i = 0; i < d; ++i) p[i] = 2.0 * rng.uniform() - 1.0;
    if (norm(p) < rmax) return p;
  }
}

}  // namespace

TEST_CASE("ball obstacle distance matches the closed form") {
  Domain dom(3, {BallObstacle{Point{0.2, 0.0, 0.0}, 0.1}});
  const Point p{0.6, 0.0, 0.0};
  CHECK(dist_to_obstacles(p, dom) == doctest::Approx(0.3).epsilon(1e-14));
  // on the obstacle -> 0
  CHECK(dist_to_obstacles(Point{0.25, 0.0, 0.0}, dom) == 0.0);
  CHECK(dist_to_obstacles(Point{0.2, 0.0, 0.0}, dom) == 0.0);
}

TEST_CASE("polyline distance agrees with a dense sampling oracle") {
  PolylineObstacle poly;
  poly.vertices = {Point{-0.8, 0.1}, Point{-0.4, -0.2}, Point{0.0, 0.0}, Point{-0.1, 0.4}};
  poly.thickness = 0.0;
  Domain dom(2, {poly});

  RngStream rng(12345, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const Point p = random_in_ball(rng, 2);
    // oracle: min distance over 1e5 points sampled densely along the polyline
    double best = 1e300;
    const int samples_per_edge = 100000 / 3;
    for (size_t e = 0; e + 1 < poly.vertices.size(); ++e) {
      for (int s = 0; s <= samples_per_edge; ++s) {
        const double t = static_cast<double>(s) / samples_per_edge;
        const Point q = poly.vertices[e] + t * (poly.vertices[e + 1] - poly.vertices[e]);
        best = std::min(best, dist(p, q));
      }
    }
    CHECK(std::abs(dist_to_obstacles(p, dom) - best) <= 1e-6);
  }
}

TEST_CASE("dist_to_obstacles rejects dimension mismatches") {
  Domain dom(2, {BallObstacle{Point{0.0, 0.0}, 0.1}});
  CHECK_THROWS_AS(dist_to_obstacles(Point{0.1, 0.1, 0.1}, dom), std::invalid_argument);
}

TEST_CASE("wos_radius basics") {
  Domain empty(2, {});
  CHECK(wos_radius(Point{0.0, 0.0}, empty) == doctest::Approx(1.0));

  // min of sphere clearance and obstacle clearance
  Domain dom(2, {BallObstacle{Point{-0.5, 0.0}, 0.1}});
  const Point p{-0.3, 0.0};  // 0.1 from K, 0.7 from the sphere
  CHECK(wos_radius(p, dom) == doctest::Approx(0.1).epsilon(1e-14));

  CHECK_THROWS_AS(wos_radius(Point{1.5, 0.0}, empty), std::invalid_argument);
}

TEST_CASE("wos ball contains no obstacle point (sampling oracle)") {
  SegmentObstacle slit{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.02};
  Domain dom(2, {slit});
  RngStream rng(99, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Point p = random_in_ball(rng, 2);
    if (!in_domain(p, dom)) continue;
    const double r = wos_radius(p, dom);
    REQUIRE(r > 0.0);
    // dense samples of the obstacle spine, inflated by the thickness: every
    // obstacle point must be at distance >= r from p (sampling slack 1e-6)
    for (int s = 0; s <= 2000; ++s) {
      const double t = s / 2000.0;
      const Point q = slit.a + t * (slit.b - slit.a);
      CHECK(dist(p, q) - slit.thickness >= r - 1e-6);
    }
  }
}

TEST_CASE("dist_to_obstacles is 1-Lipschitz on random pairs") {
  Domain dom(2, {SegmentObstacle{Point{-0.7, 0.1}, Point{-0.1, -0.3}, 0.05},
                 BallObstacle{Point{-0.2, 0.4}, 0.15}});
  RngStream rng(7, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const Point a = random_in_ball(rng, 2);
    const Point b = random_in_ball(rng, 2);
    const double da = dist_to_obstacles(a, dom);
    const double db = dist_to_obstacles(b, dom);
    CHECK(std::abs(da - db) <= dist(a, b) + 1e-12);
  }
}

TEST_CASE("cone membership") {
  const ConeSpec cone(0.4);

  SUBCASE("axis points with positive x1 are inside") {
    CHECK(in_cone(Point{0.5, 0.0, 0.0}, ConeSpec(0.4)));
    CHECK(in_cone(Point{1e-9, 0.0}, ConeSpec(1e-6)));
  }
  SUBCASE("non-positive x1 is always outside") {
    CHECK_FALSE(in_cone(Point{-0.3, 0.0}, cone));
    CHECK_FALSE(in_cone(Point{0.0, 0.0}, cone));
    CHECK_FALSE(in_cone(Point{-0.3, 0.1, 0.0}, ConeSpec(std::numbers::pi / 2)));
  }
  SUBCASE("the boundary |z - pi1(z)| = z1 tan(alpha) is excluded (strict)") {
    const double t = std::tan(cone.half_angle);
    // x1 = 1 makes the products on both sides of the comparison identical
    CHECK_FALSE(in_cone(Point{1.0, t}, cone));
    CHECK(in_cone(Point{1.0, std::nextafter(t, 0.0)}, cone));
  }
  SUBCASE("half-angle pi/2 degenerates to the open half-space") {
    CHECK(in_cone(Point{0.01, 5.0}, ConeSpec(std::numbers::pi / 2)));
  }
}

TEST_CASE("project_to_axis") {
  CHECK(project_to_axis(Point{0.3, 0.2})[0] == 0.3);
  CHECK(project_to_axis(Point{0.3, 0.2})[1] == 0.0);

  // idempotent on axis points
  const Point axis{0.4, 0.0, 0.0};
  const Point q = project_to_axis(axis);
  CHECK(q[0] == axis[0]);
  CHECK(q[1] == 0.0);

  // cone points project into the cone (their projection is an axis point)
  RngStream rng(3, 0);
  const ConeSpec cone(0.25);
  for (int trial = 0; trial < 200; ++trial) {
    Point p = random_in_ball(rng, 3, 0.5);
    if (!in_cone(p, cone)) continue;
    CHECK(in_cone(project_to_axis(p), cone));
  }

  // any point with positive first coordinate projects into any cone
  for (int trial = 0; trial < 200; ++trial) {
    Point p = random_in_ball(rng, 2);
    if (p[0] <= 0.0) continue;
    CHECK(in_cone(project_to_axis(p), cone));
  }
}

TEST_CASE("hyperplane disc distance and the vanishing-hole limit") {
  // flat disc of radius 1 in {x1 = 0} with a concentric hole of radius delta
  auto make_dom = [](double delta) {
    return Domain(3, {HyperplaneDiscObstacle{Point{0.0, 0.0, 0.0}, 0, 1.0, delta}});
  };

  // exact distances for the full disc (delta = 0)
  Domain full = make_dom(0.0);
  CHECK(dist_to_obstacles(Point{0.3, 0.0, 0.0}, full) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(dist_to_obstacles(Point{0.0, 0.5, 0.5}, full) == 0.0);

  // as delta -> 0 the distance converges pointwise to the full-disc distance
  const Point probes[3] = {Point{0.25, 0.0, 0.0}, Point{0.1, 0.05, 0.0}, Point{0.02, 0.01, 0.01}};
  for (const auto& p : probes) {
    const double limit = dist_to_obstacles(p, full);
    double prev_gap = 1e300;
    for (double delta : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
      const double gap = std::abs(dist_to_obstacles(p, make_dom(delta)) - limit);
      CHECK(gap <= prev_gap + 1e-15);
      prev_gap = gap;
    }
    CHECK(prev_gap <= 0.0125);
  }
}

TEST_CASE("wos_radius is positive inside D and zero on the boundary") {
  Domain dom(2, {BallObstacle{Point{-0.4, 0.0}, 0.2}});
  RngStream rng(11, 2);
  int tested = 0;
  for (int trial = 0; trial < 2000 && tested < 300; ++trial) {
    const Point p = random_in_ball(rng, 2);
    if (!in_domain(p, dom)) continue;
    ++tested;
    CHECK(wos_radius(p, dom) > 0.0);
  }
  CHECK(tested == 300);
  // boundary points: on the obstacle surface and on the sphere
  CHECK(wos_radius(Point{-0.4, 0.2}, dom) == 0.0);
  CHECK(wos_radius(Point{1.0, 0.0}, dom) == 0.0);
}
