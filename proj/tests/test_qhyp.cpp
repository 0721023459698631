#include "bhplab/qhyp.hpp"

#include <cmath>
#include <numbers>

#include "bhplab/rng.hpp"
#include "doctest.h"

using namespace bhp;

namespace {
constexpr double kPi = std::numbers::pi;

MetricDomain unit_disc() { return MetricDomain{}; }

}  // namespace

TEST_CASE("qh_distance: coincident points give zero") {
  const MetricDomain disc = unit_disc();
  CHECK(qh_distance(disc, Point{0.1, 0.2}, Point{0.1, 0.2}, {256, 3}) == 0.0);
}

TEST_CASE("qh_distance on the disc: center to (1/2, 0) is log 2") {
  const MetricDomain disc = unit_disc();
  const QhRefined ref = qh_distance_refined(disc, Point{0.0, 0.0}, Point{0.5, 0.0}, {512, 3});
  CHECK(std::abs(ref.value - std::log(2.0)) <= 0.02 * std::log(2.0));
  // refinement estimate brackets the change
  CHECK(ref.error_estimate <= 0.05);
}

TEST_CASE("qh_distance symmetry is exact") {
  MetricDomain omega = unit_disc();
  omega.obstacles = {BallObstacle{Point{-0.3, 0.1}, 0.15}};
  const QhGraphConfig cfg{256, 3};
  const Point a{0.4, 0.2}, b{-0.1, -0.5};
  CHECK(qh_distance(omega, a, b, cfg) == qh_distance(omega, b, a, cfg));
}

TEST_CASE("triangle inequality on random triples") {
  MetricDomain omega = unit_disc();
  omega.obstacles = {SegmentObstacle{Point{-0.7, 0.0}, Point{0.0, 0.0}, 0.02}};
  const QhGraphConfig cfg{192, 3};
  RngStream rng(31, 0);
  int done = 0;
  while (done < 8) {
    Point p[3];
    bool ok = true;
    for (auto& q : p) {
      q = Point{1.6 * rng.uniform() - 0.8, 1.6 * rng.uniform() - 0.8};
      ok = ok && omega.boundary_dist(q) > 0.02;
    }
    if (!ok) continue;
    ++done;
    const double dab = qh_distance(omega, p[0], p[1], cfg);
    const double dbc = qh_distance(omega, p[1], p[2], cfg);
    const double dac = qh_distance(omega, p[0], p[2], cfg);
    CHECK(dac <= dab + dbc + 1e-9);  // floating slack only
  }
}

TEST_CASE("qh_distance dominates the log boundary-distance ratio") {
  MetricDomain omega = unit_disc();
  omega.obstacles = {BallObstacle{Point{0.4, -0.3}, 0.1}};
  const QhGraphConfig cfg{256, 3};
  RngStream rng(5, 5);
  int done = 0;
  while (done < 10) {
    const Point a{1.8 * rng.uniform() - 0.9, 1.8 * rng.uniform() - 0.9};
    const Point b{1.8 * rng.uniform() - 0.9, 1.8 * rng.uniform() - 0.9};
    if (omega.boundary_dist(a) <= 0.02 || omega.boundary_dist(b) <= 0.02) continue;
    ++done;
    const double k = qh_distance(omega, a, b, cfg);
    const double lower = std::abs(std::log(omega.boundary_dist(a) / omega.boundary_dist(b)));
    CHECK(k >= lower * (1.0 - 0.02) - 0.02);  // 2% grid slack
  }
}

TEST_CASE("growth integral on the disc") {
  const MetricDomain disc = unit_disc();
  const Point center{0.0, 0.0};
  const QhGraphConfig cfg{512, 3};

  SUBCASE("tau = 0 gives the area") {
    const GrowthIntegral g = exp_growth_integral(disc, center, 0.0, cfg);
    CHECK(std::abs(g.value - kPi) <= 0.01 * kPi);
    CHECK_FALSE(g.diverges);
  }
  SUBCASE("tau = 1/2 gives 8 pi / 3 within 3%") {
    const GrowthIntegral g = exp_growth_integral(disc, center, 0.5, cfg);
    CHECK(std::abs(g.value - 8.0 * kPi / 3.0) <= 0.03 * 8.0 * kPi / 3.0);
    CHECK_FALSE(g.diverges);
  }
  SUBCASE("tau = 2 diverges under refinement") {
    const GrowthIntegral g = exp_growth_integral(disc, center, 2.0, cfg);
    CHECK(g.diverges);
  }
  SUBCASE("monotone in tau (same field)") {
    const auto sweep = exp_growth_integral_sweep(disc, center, {0.1, 0.3, 0.5, 0.7}, cfg);
    for (size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].value >= sweep[i - 1].value);
  }
}

TEST_CASE("qhbc_fit on the disc recovers C1 = 1") {
  const MetricDomain disc = unit_disc();
  std::vector<Point> samples;
  for (int i = 0; i < 25; ++i) {
    const double r = 1.0 - std::pow(10.0, -2.2 * i / 24.0);
    for (int a = 0; a < 6; ++a)
      samples.push_back(Point{r * std::cos(a * kPi / 3 + 0.2), r * std::sin(a * kPi / 3 + 0.2)});
  }
  const QhbcFit fit = qhbc_fit(disc, Point{0.0, 0.0}, samples, {512, 3});
  CHECK(fit.decades >= 2.0);
  CHECK(std::abs(fit.c1 - 1.0) <= 0.1);
  CHECK(fit.c2 <= 0.1);
  CHECK(fit.max_violation <= 0.1);
}

TEST_CASE("qhbc_fit degenerate and error cases") {
  const MetricDomain disc = unit_disc();
  SUBCASE("single sample: C2-only fit") {
    const QhbcFit fit = qhbc_fit(disc, Point{0.0, 0.0}, {Point{0.5, 0.0}}, {128, 3});
    CHECK(fit.c1 == 0.0);
    CHECK(fit.c2 == doctest::Approx(std::log(2.0)).epsilon(0.05));
  }
  SUBCASE("insufficient dynamic range throws") {
    std::vector<Point> close;
    for (int i = 0; i < 120; ++i) close.push_back(Point{0.3 + 0.001 * i, 0.0});
    CHECK_THROWS_AS(qhbc_fit(disc, Point{0.0, 0.0}, close, {128, 3}), std::invalid_argument);
  }
}

TEST_CASE("hitting angles for the axis slit") {
  Domain slit(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.0}});
  const auto angles = hitting_angles(slit, 0.5, 0.1);
  REQUIRE(angles.has_value());
  const auto [theta1, theta2] = *angles;
  CHECK(theta1 > 0.0);
  CHECK(theta1 < 2.0 * kPi);
  CHECK(theta2 < 0.0);
  // the slit is symmetric across the axis
  CHECK(std::abs(theta1 + theta2) <= 1e-5);
  // the touching circle is at arcsin(eps) off the negative axis
  CHECK(theta1 == doctest::Approx(kPi - std::asin(0.1)).epsilon(1e-4));
  // postcondition: the hitting circle meets K at distance r*eps
  const Point probe{0.5 * std::cos(theta1), 0.5 * std::sin(theta1)};
  CHECK(std::abs(dist_to_obstacles(probe, slit) - 0.05) <= 1e-5);
}

TEST_CASE("hitting angles: far obstacle gives none") {
  Domain far(2, {BallObstacle{Point{-0.9, 0.0}, 0.05}});
  CHECK_FALSE(hitting_angles(far, 0.5, 0.01).has_value());
}

TEST_CASE("good_set_check on a thickened slit") {
  Domain slit(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.02}});
  GoodSetParams params;
  params.graph = QhGraphConfig{256, 3};
  const GoodSetReport rep = good_set_check(slit, 0.5, 0.1, params);
  CHECK(rep.is_good);
  CHECK(rep.fit1.c1 <= 4.0);  // locally half-disc-like
  CHECK(rep.fit2.c1 <= 4.0);
  // roots sit on the slit surface inside the closed hitting balls
  CHECK(std::abs(dist_to_obstacles(rep.root1, slit)) <= 1e-9);
  CHECK(dist(rep.root1, Point{0.5 * std::cos(rep.theta1), 0.5 * std::sin(rep.theta1)}) <=
        0.05 * (1.0 + 1e-6) + 1e-9);
  // report angles pass through hitting_angles
  const auto angles = hitting_angles(slit, 0.5, 0.1);
  REQUIRE(angles.has_value());
  CHECK(rep.theta1 == angles->first);
  CHECK(rep.theta2 == angles->second);
}

TEST_CASE("good_set_check flags an exponential cusp") {
  PolylineObstacle spike;
  for (int i = 0; i <= 30; ++i) {
    const double x = -0.56 + 0.09 * i / 30.0;
    spike.vertices.push_back(Point{x, 0.01 + 6e-4 * std::exp(45.0 * (x + 0.56))});
  }
  spike.thickness = 0.0015;
  Domain cusp(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.01}, spike});
  GoodSetParams params;
  params.graph = QhGraphConfig{256, 3};
  const GoodSetReport rep = good_set_check(cusp, 0.5, 0.1, params);
  CHECK_FALSE(rep.is_good);
}
