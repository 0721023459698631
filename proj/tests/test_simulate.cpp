#include "bhplab/simulate.hpp"

#include <cmath>
#include <cstdlib>

#include "bhplab/kernel.hpp"
#include "doctest.h"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace bhp;

TEST_CASE("sample_unit_sphere basics") {
  RngStream rng(1, 0);
  for (int d : {2, 3, 7}) {
    for (int i = 0; i < 100; ++i) {
      const Point v = sample_unit_sphere(rng, d);
      CHECK(std::abs(norm(v) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("sample_unit_sphere: coordinate means vanish (CLT bound)") {
  const int d = 3;
  const int64_t n = 1000000;
  RngStream rng(2024, 0);
  double sums[3] = {0.0, 0.0, 0.0};
  for (int64_t i = 0; i < n; ++i) {
    const Point v = sample_unit_sphere(rng, d);
    for (int k = 0; k < d; ++k) sums[k] += v[k];
  }
  // per-coordinate variance is 1/d; allow 4 sigma plus margin
  for (int k = 0; k < d; ++k)
    CHECK(std::abs(sums[k] / static_cast<double>(n)) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sample_unit_sphere: cap frequencies match the surface measure") {
  for (int d : {2, 3}) {
    const double beta = 0.7;
    const double p = cap_area(beta, d) / sphere_surface_area(d);
    const int64_t n = 200000;
    RngStream rng(7, 3);
    int64_t hits = 0;
    const double cos_beta = std::cos(beta);
    for (int64_t i = 0; i < n; ++i)
      if (sample_unit_sphere(rng, d)[0] > cos_beta) ++hits;
    const double p_hat = static_cast<double>(hits) / static_cast<double>(n);
    CHECK(std::abs(p_hat - p) <= 3.0 * binomial_sigma(p, n));
  }
}

TEST_CASE("wos_exit with no obstacle always reaches the sphere") {
  Domain dom(2, {});
  WosConfig cfg;
  cfg.n_paths = 0;
  RngStream rng(5, 0);
  for (int i = 0; i < 500; ++i) {
    const ExitRecord rec = wos_exit(Point{0.3, -0.2}, dom, cfg, rng);
    REQUIRE(rec.kind == ExitKind::sphere);
    CHECK(std::abs(norm(rec.exit_point) - 1.0) <= 1e-12);
  }
}

TEST_CASE("wos_exit from the center: cap exit frequencies are uniform") {
  Domain dom(3, {});
  WosConfig cfg;
  cfg.n_paths = 100000;
  const double beta = 0.9;
  const double p = cap_area(beta, 3) / sphere_surface_area(3);
  const double cos_beta = std::cos(beta);
  const EnsembleCounts counts = run_wos_ensemble(
      Point::zero(3), dom, cfg, 99, 0,
      [&](const ExitRecord& rec) { return rec.exit_point[0] > cos_beta ? 1u : 0u; });
  const double p_hat = static_cast<double>(counts.counts[0]) / static_cast<double>(counts.n);
  CHECK(counts.censored == 0);
  CHECK(std::abs(p_hat - p) <= 3.0 * binomial_sigma(p, counts.n));
}

TEST_CASE("annulus hitting probability matches the radial harmonic closed form") {
  // d = 3, inner ball radius delta: P^y(hit inner before sphere)
  // = (|y|^-1 - 1) / (delta^-1 - 1); 3/49 at |y| = 1/4, delta = 0.02
  const double delta = 0.02;
  Domain dom(3, {BallObstacle{Point::zero(3), delta}});
  WosConfig cfg;
  cfg.n_paths = 100000;
  const EnsembleCounts counts = run_wos_ensemble(
      Point{0.25, 0.0, 0.0}, dom, cfg, 2718, 0,
      [](const ExitRecord& rec) { return rec.kind == ExitKind::obstacle ? 1u : 0u; });
  const double p_exact = 3.0 / 49.0;
  const double p_hat = static_cast<double>(counts.counts[0]) / static_cast<double>(counts.n);
  CHECK(std::abs(p_hat - p_exact) <= 3.0 * binomial_sigma(p_exact, counts.n));
}

TEST_CASE("estimate_uv: empty obstacle set gives v = 1 and u near the cap law") {
  Domain dom(2, {});
  const double beta = 0.2;
  const ConeSpec cone(beta);
  WosConfig cfg;
  cfg.n_paths = 100000;
  const Point start{0.3, 0.1};
  const PairedEstimate est = estimate_uv(start, dom, cone, cfg, 11);
  CHECK(est.count_v == est.n);  // v = 1 exactly: every path exits the sphere
  CHECK(est.v_hat == 1.0);
  const double u_exact = cap_exit_prob(start, CapSpec::make(beta, 2), 1e-10);
  CHECK(std::abs(est.u_hat - u_exact) <= 3.0 * binomial_sigma(u_exact, est.n));
  CHECK(est.count_u <= est.count_v);
}

TEST_CASE("estimate_uv: count_u <= count_v holds exactly on obstacle domains") {
  Domain dom(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.0}});
  WosConfig cfg;
  cfg.n_paths = 20000;
  const PairedEstimate est = estimate_uv(Point{0.25, 0.0}, dom, ConeSpec(0.13), cfg, 3);
  CHECK(est.count_u <= est.count_v);
  CHECK(est.count_v <= est.n);
  CHECK(est.ratio() >= 0.0);
  CHECK(est.ratio() <= 1.0);
}

TEST_CASE("slit lower bound: u/v >= h(0) - 3 sigma on the positive axis") {
  const int d = 2;
  const auto kc = DimensionConstants::make(d);
  const double beta = kc.alpha_d / 2;
  const double c_beta = cap_area(beta, d) / kc.omega_dm1;
  Domain dom(d, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.0}});
  WosConfig cfg;
  cfg.n_paths = 50000;
  const PairedEstimate est = estimate_uv(Point{0.25, 0.0}, dom, ConeSpec(beta), cfg, 17);
  const double sigma = binomial_sigma(est.ratio(), est.count_v);
  CHECK(est.ratio() >= c_beta - 3.0 * sigma);
}

TEST_CASE("determinism: identical (config, seed) reproduce identical counts") {
  Domain dom(2, {BallObstacle{Point{-0.4, 0.0}, 0.2}});
  WosConfig cfg;
  cfg.n_paths = 20000;
  const ConeSpec cone(0.2);
  const PairedEstimate a = estimate_uv(Point{0.3, 0.0}, dom, cone, cfg, 424242);

#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const PairedEstimate b = estimate_uv(Point{0.3, 0.0}, dom, cone, cfg, 424242);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif

  CHECK(a.count_u == b.count_u);
  CHECK(a.count_v == b.count_v);
  CHECK(a.censored == b.censored);
}

TEST_CASE("censored paths above 1% abort the estimator") {
  Domain dom(2, {});
  WosConfig cfg;
  cfg.n_paths = 1000;
  cfg.max_steps = 1;  // forces censoring
  CHECK_THROWS_AS(estimate_uv(Point{0.1, 0.0}, dom, ConeSpec(0.3), cfg, 1), std::runtime_error);
}

TEST_CASE("shell bias: halving shell_eps moves v_hat by less than 3 combined sigma") {
  Domain dom(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.0}});
  const ConeSpec cone(0.126);
  WosConfig coarse;
  coarse.n_paths = 60000;
  coarse.shell_eps = 1e-4;
  WosConfig fine = coarse;
  fine.shell_eps = 5e-5;
  const PairedEstimate a = estimate_uv(Point{0.25, 0.0}, dom, cone, coarse, 5);
  const PairedEstimate b = estimate_uv(Point{0.25, 0.0}, dom, cone, fine, 6);
  const double sigma = std::hypot(binomial_sigma(a.v_hat, a.n), binomial_sigma(b.v_hat, b.n));
  CHECK(std::abs(a.v_hat - b.v_hat) <= 3.0 * sigma);
}

TEST_CASE("monotonicity: enlarging K does not increase v_hat beyond noise") {
  const ConeSpec cone(0.2);
  WosConfig cfg;
  cfg.n_paths = 60000;
  Domain small_k(2, {SegmentObstacle{Point{-0.5, 0.0}, Point{0.0, 0.0}, 0.0}});
  Domain big_k(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.02}});
  const PairedEstimate small_est = estimate_uv(Point{0.25, 0.0}, small_k, cone, cfg, 33);
  const PairedEstimate big_est = estimate_uv(Point{0.25, 0.0}, big_k, cone, cfg, 33);
  const double sigma =
      std::hypot(binomial_sigma(small_est.v_hat, cfg.n_paths), binomial_sigma(big_est.v_hat, cfg.n_paths));
  CHECK(big_est.v_hat <= small_est.v_hat + 3.0 * sigma);
}

TEST_CASE("estimate_ratio_bound validates points and reports pairwise ratios") {
  Domain dom(2, {SegmentObstacle{Point{-0.9, 0.0}, Point{0.0, 0.0}, 0.0}});
  const ConeSpec cone(0.126);
  WosConfig cfg;
  cfg.n_paths = 20000;

  SUBCASE("single point gives double ratio 1") {
    const RatioBoundReport rep = estimate_ratio_bound({Point{0.25, 0.0}}, dom, cone, cfg, 8);
    CHECK(rep.worst_double_ratio == doctest::Approx(1.0));
  }
  SUBCASE("point validation") {
    CHECK_THROWS_AS(estimate_ratio_bound({Point{0.7, 0.0}}, dom, cone, cfg, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_ratio_bound({Point{-0.2, 0.1}}, dom, cone, cfg, 8),
                    std::invalid_argument);
  }
  SUBCASE("no obstacle: double ratio matches the quadrature oracle within noise") {
    Domain empty(2, {});
    const std::vector<Point> pts{Point{0.2, 0.1}, Point{0.35, -0.1}};
    const RatioBoundReport rep = estimate_ratio_bound(pts, empty, cone, cfg, 12);
    const auto cap = CapSpec::make(cone.half_angle, 2);
    const double h1 = cap_exit_prob(pts[0], cap, 1e-10);
    const double h2 = cap_exit_prob(pts[1], cap, 1e-10);
    const double oracle = std::max(h1 / h2, h2 / h1);
    // v = 1 for both points, so the ratio noise is the u noise
    const double sig = 3.0 * (binomial_sigma(h1, cfg.n_paths) / h2 +
                              binomial_sigma(h2, cfg.n_paths) * h1 / (h2 * h2));
    CHECK(std::abs(rep.worst_double_ratio - oracle) <= sig);
  }
}
