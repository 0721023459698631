#pragma once

// Analytic layer: dimensional constants, sphere/cap surface measures, the
// Poisson kernel of the unit ball, the cone-exit harmonic function evaluated
// by quadrature, and the two closed-form inequality functions used by the
// exhaustive grid checks.

#include "bhplab/geometry.hpp"

namespace bhp {

/// Per-dimension constants. kappa_d = [4(d+2)]^(-1/2), alpha_d = asin(kappa_d),
/// omega_dm1 = surface area of the unit sphere in R^d.
struct DimensionConstants {
  int d = 2;
  double kappa_d = 0.0;
  double alpha_d = 0.0;
  double omega_dm1 = 0.0;

  static DimensionConstants make(int d);
};

/// Surface area of the unit (d-1)-sphere in R^d: 2 pi^(d/2) / Gamma(d/2).
double sphere_surface_area(int d);

/// Surface measure of the polar cap { y on the unit sphere : angle(y, e1) < beta },
/// beta in (0, pi]. d = 2 gives arc length 2*beta.
double cap_area(double beta, int d);

/// Spherical cap A_beta = W_beta intersected with the unit sphere, with its
/// derived quantities. beta is a cone half-angle in (0, pi/2].
struct CapSpec {
  double beta = 0.0;
  int d = 2;
  double kappa_beta = 0.0;  // sin(beta)
  double area = 0.0;        // cap_area(beta, d)

  static CapSpec make(double beta, int d);
};

/// Poisson kernel of the unit ball: omega_{d-1}^{-1} (1-|x|^2)/|x-y|^d,
/// for |x| < 1 and y on the unit sphere (checked to 1e-12).
double poisson_kernel(const Point& x, const Point& y, int d);

/// Probability that Brownian motion started at x (|x| < 1) exits the unit
/// ball through the cap A_beta, computed as the cap integral of the Poisson
/// kernel to absolute tolerance tol.
///
/// Points on the e1 axis reduce to a single polar integral; general points
/// use a polar x azimuthal product rule that exploits rotational symmetry
/// about the plane spanned by x and e1. The polar direction is refined
/// adaptively (Gauss-Kronrod panels); the azimuthal average uses a doubling
/// composite rule.
double cap_exit_prob(const Point& x, const CapSpec& cap, double tol = 1e-8);

/// g(x) - f(x) for f = (kappa_d - x)/(kappa_d + x) and
/// g = [(1+x^2-2x*kappa_d)/(1+x^2+2x*kappa_d)]^(1+d/2), x in [0, kappa_d].
/// Nonnegative (up to 1e-12 slack) by the mirrored-distance ratio inequality.
double mirror_ratio_gap(int d, double x);

/// (1-x^2)/(1+x^2-2xz)^(d/2) + (1-x^2)/(1+x^2+2xz)^(d/2) for
/// x, z in [0, kappa_d]; bounded by 2 (up to 1e-12 slack). This is the
/// kernel-numerator sum at a cap point and its mirror image.
double mirrored_kernel_sum(int d, double x, double z);

}  // namespace bhp
