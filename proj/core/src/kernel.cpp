#include "bhplab/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bhplab/quadrature.hpp"

namespace bhp {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^beta sin^n(t) dt by the standard reduction formula.
double sin_power_integral(double beta, int n) {
  if (n == 0) return beta;
  if (n == 1) return 1.0 - std::cos(beta);
  const double s = std::sin(beta);
  const double c = std::cos(beta);
  return (-c * std::pow(s, n - 1) + (n - 1) * sin_power_integral(beta, n - 2)) / n;
}

void check_dim(int d) {
  if (d < 2 || d > Point::kMaxDim) throw std::invalid_argument("dimension must be in [2,10]");
}

}  // namespace

DimensionConstants DimensionConstants::make(int d) {
  check_dim(d);
  DimensionConstants k;
  k.d = d;
  k.kappa_d = 1.0 / (2.0 * std::sqrt(static_cast<double>(d) + 2.0));
  k.alpha_d = std::asin(k.kappa_d);
  k.omega_dm1 = sphere_surface_area(d);
  return k;
}

double sphere_surface_area(int d) {
  check_dim(d);
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double cap_area(double beta, int d) {
  check_dim(d);
  if (!(beta > 0.0) || beta > kPi) throw std::invalid_argument("cap_area: beta must be in (0, pi]");
  if (d == 2) return 2.0 * beta;
  const double omega_dm2 = 2.0 * std::pow(kPi, 0.5 * (d - 1)) / std::tgamma(0.5 * (d - 1));
  return omega_dm2 * sin_power_integral(beta, d - 2);
}

CapSpec CapSpec::make(double beta, int d) {
  check_dim(d);
  if (!(beta > 0.0) || beta > kPi / 2 + 1e-15)
    throw std::invalid_argument("CapSpec: beta must be in (0, pi/2]");
  CapSpec c;
  c.beta = beta;
  c.d = d;
  c.kappa_beta = std::sin(beta);
  c.area = cap_area(beta, d);
  return c;
}

double poisson_kernel(const Point& x, const Point& y, int d) {
  check_dim(d);
  if (x.dim() != d || y.dim() != d) throw std::invalid_argument("poisson_kernel: dimension mismatch");
  const double xn = norm(x);
  if (xn >= 1.0) throw std::invalid_argument("poisson_kernel: |x| must be < 1");
  if (std::abs(norm(y) - 1.0) > 1e-12)
    throw std::invalid_argument("poisson_kernel: y must lie on the unit sphere");
  const double r = dist(x, y);
  return (1.0 - xn * xn) / (sphere_surface_area(d) * std::pow(r, d));
}

double cap_exit_prob(const Point& x, const CapSpec& cap, double tol) {
  const int d = cap.d;
  if (x.dim() != d) throw std::invalid_argument("cap_exit_prob: dimension mismatch");
  const double xn_sq = norm_sq(x);
  if (xn_sq >= 1.0) throw std::invalid_argument("cap_exit_prob: |x| must be < 1");
  if (!(tol > 0.0)) throw std::invalid_argument("cap_exit_prob: tol must be positive");

  // Reduce to the (e1, e2)-plane: only x1 and the perpendicular magnitude
  // matter, by rotational symmetry of the cap about the e1 axis.
  const double x1 = x[0];
  double perp_sq = 0.0;
  for (int i = 1; i < d; ++i) perp_sq += x[i] * x[i];
  const double xp = std::sqrt(perp_sq);
  const double one_minus = 1.0 - xn_sq;
  const double omega = sphere_surface_area(d);

  // Squared distance |x - y(theta, phi)|^2 with y = (cos t, sin t * w, ...),
  // w = cos(phi) the first azimuthal coordinate.
  auto dist_sq = [&](double cos_t, double sin_t, double w) {
    return 1.0 + xn_sq - 2.0 * (x1 * cos_t + xp * sin_t * w);
  };

  if (d == 2) {
    auto f = [&](double t) {
      const double r2 = dist_sq(std::cos(t), std::sin(t), 1.0);
      return one_minus / r2;
    };
    // integrate over (-beta, beta); the xp >= 0 reduction is harmless since
    // the cap is symmetric under reflection of the second coordinate.
    const QuadResult q = integrate_adaptive(f, -cap.beta, cap.beta, tol * omega);
    return q.value / omega;
  }

  const bool on_axis = xp < 1e-14;
  const double omega_dm2 = sphere_surface_area(d - 1);
  // Azimuthal weight for the S^(d-2) average of a function of its first
  // coordinate; d = 3 is the circle case.
  const double omega_dm3 = (d >= 4) ? sphere_surface_area(d - 2) : 2.0;

  // Absolute tolerance budget: half for the polar panels, half for the
  // azimuthal averages (whose error integrates against sin^(d-2)).
  const double outer_tol = 0.5 * tol * omega;
  const double inner_tol = 0.5 * tol * omega / std::max(sin_power_integral(cap.beta, d - 2), 1e-300);

  auto azimuthal = [&](double cos_t, double sin_t) -> double {
    if (on_axis) {
      return omega_dm2 * one_minus / std::pow(dist_sq(cos_t, sin_t, 0.0), 0.5 * d);
    }
    auto g = [&](double phi) {
      const double w = std::cos(phi);
      const double base = one_minus / std::pow(dist_sq(cos_t, sin_t, w), 0.5 * d);
      return (d >= 4) ? base * std::pow(std::sin(phi), d - 3) : base;
    };
    const QuadResult q = integrate_doubling(g, 0.0, kPi, inner_tol);
    return omega_dm3 * q.value;
  };

  auto f = [&](double t) {
    const double st = std::sin(t);
    return std::pow(st, d - 2) * azimuthal(std::cos(t), st);
  };
  const QuadResult q = integrate_adaptive(f, 0.0, cap.beta, outer_tol, 2048);
  return q.value / omega;
}

double mirror_ratio_gap(int d, double x) {
  check_dim(d);
  const double kappa = 1.0 / (2.0 * std::sqrt(static_cast<double>(d) + 2.0));
  if (x < 0.0 || x > kappa * (1.0 + 1e-12))
    throw std::invalid_argument("mirror_ratio_gap: x must be in [0, kappa_d]");
  const double f = (kappa - x) / (kappa + x);
  const double x2 = x * x;
  const double g = std::pow((1.0 + x2 - 2.0 * x * kappa) / (1.0 + x2 + 2.0 * x * kappa),
                            1.0 + 0.5 * d);
  return g - f;
}

double mirrored_kernel_sum(int d, double x, double z) {
  check_dim(d);
  const double kappa = 1.0 / (2.0 * std::sqrt(static_cast<double>(d) + 2.0));
  if (x < 0.0 || x > kappa * (1.0 + 1e-12) || z < 0.0 || z > kappa * (1.0 + 1e-12))
    throw std::invalid_argument("mirrored_kernel_sum: arguments must be in [0, kappa_d]");
  const double x2 = x * x;
  const double num = 1.0 - x2;
  return num / std::pow(1.0 + x2 - 2.0 * x * z, 0.5 * d) +
         num / std::pow(1.0 + x2 + 2.0 * x * z, 0.5 * d);
}

}  // namespace bhp
