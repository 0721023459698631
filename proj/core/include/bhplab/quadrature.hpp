#pragma once

// Adaptive 1D quadrature: Gauss-Kronrod 7-15 panels, worst-interval-first
// refinement until the summed error estimate drops below an absolute
// tolerance.

#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bhp {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // summed per-panel |K15 - G7| estimate
  size_t evals = 0;
};

namespace detail {

// Kronrod abscissae on [0,1] with Gauss-7 and Kronrod-15 weights.
// Row layout: { |x|, w_gauss, w_kronrod }; w_gauss = 0 on Kronrod-only nodes.
inline constexpr double kGk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class F>
inline void gk15_panel(const F& f, double a, double b, double& k15, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double g7 = kGk15[0][1] * f0;
  double k = kGk15[0][2] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGk15[i][0];
    const double fi = f(mid + dx) + f(mid - dx);
    g7 += kGk15[i][1] * fi;
    k += kGk15[i][2] * fi;
  }
  g7 *= half;
  k *= half;
  k15 = k;
  err = std::abs(k - g7);
}

}  // namespace detail

/// Integrate f over [a,b] to absolute tolerance abs_tol. Throws
/// std::runtime_error if the panel budget is exhausted first.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                              size_t max_panels = 4096) {
  struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };

  QuadResult out;
  if (a == b) return out;

  std::priority_queue<Panel> heap;
  Panel first{a, b, 0.0, 0.0};
  detail::gk15_panel(f, a, b, first.value, first.error);
  out.evals = 15;
  double total = first.value;
  double total_err = first.error;
  heap.push(first);

  while (total_err > abs_tol) {
    if (heap.size() >= max_panels)
      throw std::runtime_error("integrate_adaptive: tolerance not reached within panel budget");
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{worst.a, mid, 0.0, 0.0};
    Panel right{mid, worst.b, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.error);
    detail::gk15_panel(f, right.a, right.b, right.value, right.error);
    out.evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  out.value = total;
  out.error = total_err;
  return out;
}

/// Composite-Simpson with interval doubling; Richardson difference between
/// successive refinements as the error estimate. Used where the integrand is
/// smooth and periodic-ish (azimuthal averages).
template <class F>
QuadResult integrate_doubling(const F& f, double a, double b, double abs_tol,
                              int m0 = 16, int max_m = 1 << 16) {
  auto simpson = [&](int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
  };
  QuadResult out;
  int m = m0;
  double prev = simpson(m);
  out.evals = static_cast<size_t>(m) + 1;
  for (m *= 2; m <= max_m; m *= 2) {
    const double cur = simpson(m);
    out.evals += static_cast<size_t>(m) + 1;
    const double err = std::abs(cur - prev) / 15.0;
    if (err <= abs_tol) {
      out.value = cur;
      out.error = err;
      return out;
    }
    prev = cur;
  }
  throw std::runtime_error("integrate_doubling: tolerance not reached");
}

}  // namespace bhp
