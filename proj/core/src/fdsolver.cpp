#include "bhplab/fdsolver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace bhp {

namespace {
constexpr double kPi = std::numbers::pi;
}

BoundaryTarget BoundaryTarget::cap(double beta, int axis) {
  BoundaryTarget t;
  t.kind = Kind::cap;
  t.beta = beta;
  t.axis = axis;
  return t;
}

BoundaryTarget BoundaryTarget::halfspace(int sign, int axis) {
  BoundaryTarget t;
  t.kind = Kind::halfspace;
  t.sign = sign >= 0 ? 1 : -1;
  t.axis = axis;
  return t;
}

BoundaryTarget BoundaryTarget::arc(double theta_lo, double theta_hi) {
  BoundaryTarget t;
  t.kind = Kind::arc;
  t.theta_lo = theta_lo;
  t.theta_hi = theta_hi;
  return t;
}

bool BoundaryTarget::contains(const Point& y_dir) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::cap:
      return y_dir[axis] > std::cos(beta);
    case Kind::halfspace:
      return sign * y_dir[axis] > 0.0;
    case Kind::arc: {
      const double theta = std::atan2(y_dir[1], y_dir[0]);
      if (theta_lo <= theta_hi) return theta >= theta_lo && theta <= theta_hi;
      return theta >= theta_lo || theta <= theta_hi;  // wrapped range
    }
  }
  return false;
}

RasterDomain rasterize(const Domain& dom, int n, const BoundaryTarget& target) {
  const int d = dom.dimension();
  if (d != 2 && d != 3) throw std::invalid_argument("rasterize: d must be 2 or 3");
  if (n < 32) throw std::invalid_argument("rasterize: n must be >= 32");
  if (d == 3 && n > 128) throw std::invalid_argument("rasterize: 3D resolution capped at 128");

  RasterDomain rd;
  rd.d = d;
  rd.n = n;
  // Pad the grid so the ball keeps a >= 1.5-cell margin to the grid edge for
  // n >= 32; the ratio is resolution-independent so that grids at n and n/2
  // nest exactly (needed by the coarse-to-fine ladder and halving checks).
  rd.extent = dom.outer_radius() * 1.125;
  rd.h = 2.0 * rd.extent / n;
  const size_t cells = d == 2 ? static_cast<size_t>(n) * n : static_cast<size_t>(n) * n * n;
  rd.mask.assign(cells, static_cast<CellType>(3));
  rd.boundary_data.assign(cells, 0.0);

  const double R = dom.outer_radius();
  const double dil = 0.5 * rd.h;  // obstacle wins ties within half a cell

  auto classify = [&](const Point& c) -> CellType {
    const double r = norm(c);
    if (r < R && dist_to_obstacles(c, dom) <= dil) return CellType::obstacle;
    if (r < R) return CellType::interior;
    return CellType::exterior;
  };

  if (d == 2) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        rd.mask[rd.idx2(i, j)] = classify(Point{rd.coord(i), rd.coord(j)});
    // exterior cells face-adjacent to the interior become boundary cells
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (rd.mask[rd.idx2(i, j)] != CellType::exterior) continue;
        const bool near =
            (i > 0 && rd.mask[rd.idx2(i - 1, j)] == CellType::interior) ||
            (i + 1 < n && rd.mask[rd.idx2(i + 1, j)] == CellType::interior) ||
            (j > 0 && rd.mask[rd.idx2(i, j - 1)] == CellType::interior) ||
            (j + 1 < n && rd.mask[rd.idx2(i, j + 1)] == CellType::interior);
        if (!near) continue;
        rd.mask[rd.idx2(i, j)] = CellType::boundary;
        Point c{rd.coord(i), rd.coord(j)};
        c *= 1.0 / norm(c);
        rd.boundary_data[rd.idx2(i, j)] = target.contains(c) ? 1.0 : 0.0;
      }
  } else {
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          rd.mask[rd.idx3(i, j, k)] = classify(Point{rd.coord(i), rd.coord(j), rd.coord(k)});
    auto interior_at = [&](int i, int j, int k) {
      if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n) return false;
      return rd.mask[rd.idx3(i, j, k)] == CellType::interior;
    };
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          if (rd.mask[rd.idx3(i, j, k)] != CellType::exterior) continue;
          const bool near = interior_at(i - 1, j, k) || interior_at(i + 1, j, k) ||
                            interior_at(i, j - 1, k) || interior_at(i, j + 1, k) ||
                            interior_at(i, j, k - 1) || interior_at(i, j, k + 1);
          if (!near) continue;
          rd.mask[rd.idx3(i, j, k)] = CellType::boundary;
          Point c{rd.coord(i), rd.coord(j), rd.coord(k)};
          c *= 1.0 / norm(c);
          rd.boundary_data[rd.idx3(i, j, k)] = target.contains(c) ? 1.0 : 0.0;
        }
  }
  return rd;
}

FdSolveStats solve_dirichlet(const RasterDomain& rd, std::vector<double>& values, double tol,
                             int max_sweeps) {
  if (values.size() != rd.cell_count())
    throw std::invalid_argument("solve_dirichlet: values buffer has the wrong size");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_dirichlet: tol must be positive");

  const int n = rd.n;
  const double omega = 2.0 / (1.0 + std::sin(kPi / n));
  const double inv_nb = rd.d == 2 ? 0.25 : (1.0 / 6.0);

  // Fixed (Dirichlet) cells carry their data in the value array so the sweep
  // can read neighbors uniformly.
  size_t interior_count = 0;
  for (size_t c = 0; c < rd.cell_count(); ++c) {
    if (rd.mask[c] == CellType::interior) {
      ++interior_count;
    } else {
      values[c] = rd.boundary_data[c];
    }
  }
  if (interior_count == 0) throw std::invalid_argument("solve_dirichlet: no interior cells");

  FdSolveStats stats;

  if (rd.d == 2) {
    auto sweep_color = [&](int color) {
#pragma omp parallel for schedule(static)
      for (int j = 1; j < n - 1; ++j) {
        const int start = 1 + ((j + color) & 1);
        for (int i = start; i < n - 1; i += 2) {
          const size_t c = rd.idx2(i, j);
          if (rd.mask[c] != CellType::interior) continue;
          const double avg = inv_nb * (values[c - 1] + values[c + 1] +
                                       values[c - static_cast<size_t>(n)] +
                                       values[c + static_cast<size_t>(n)]);
          values[c] += omega * (avg - values[c]);
        }
      }
    };
    auto residual = [&]() {
      double res = 0.0;
#pragma omp parallel for schedule(static) reduction(max : res)
      for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
          const size_t c = rd.idx2(i, j);
          if (rd.mask[c] != CellType::interior) continue;
          const double avg = inv_nb * (values[c - 1] + values[c + 1] +
                                       values[c - static_cast<size_t>(n)] +
                                       values[c + static_cast<size_t>(n)]);
          res = std::max(res, std::abs(avg - values[c]));
        }
      return res;
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      sweep_color(0);
      sweep_color(1);
      if (sweep % 32 == 31 || sweep == max_sweeps - 1) {
        stats.residual = residual();
        stats.sweeps = sweep + 1;
        if (stats.residual <= tol) return stats;
      }
    }
  } else {
    const size_t nn = static_cast<size_t>(n) * n;
    auto sweep_color = [&](int color) {
#pragma omp parallel for schedule(static)
      for (int k = 1; k < n - 1; ++k)
        for (int j = 1; j < n - 1; ++j) {
          const int start = 1 + ((j + k + color) & 1);
          for (int i = start; i < n - 1; i += 2) {
            const size_t c = rd.idx3(i, j, k);
            if (rd.mask[c] != CellType::interior) continue;
            const double avg =
                inv_nb * (values[c - 1] + values[c + 1] + values[c - static_cast<size_t>(n)] +
                          values[c + static_cast<size_t>(n)] + values[c - nn] + values[c + nn]);
            values[c] += omega * (avg - values[c]);
          }
        }
    };
    auto residual = [&]() {
      double res = 0.0;
#pragma omp parallel for schedule(static) reduction(max : res)
      for (int k = 1; k < n - 1; ++k)
        for (int j = 1; j < n - 1; ++j)
          for (int i = 1; i < n - 1; ++i) {
            const size_t c = rd.idx3(i, j, k);
            if (rd.mask[c] != CellType::interior) continue;
            const double avg =
                inv_nb * (values[c - 1] + values[c + 1] + values[c - static_cast<size_t>(n)] +
                          values[c + static_cast<size_t>(n)] + values[c - nn] + values[c + nn]);
            res = std::max(res, std::abs(avg - values[c]));
          }
      return res;
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      sweep_color(0);
      sweep_color(1);
      if (sweep % 16 == 15 || sweep == max_sweeps - 1) {
        stats.residual = residual();
        stats.sweeps = sweep + 1;
        if (stats.residual <= tol) return stats;
      }
    }
  }
  throw std::runtime_error("solve_dirichlet: SOR did not converge within the sweep budget");
}

double interpolate_at(const RasterDomain& rd, const std::vector<double>& values, const Point& p) {
  if (p.dim() != rd.d) throw std::invalid_argument("interpolate_at: dimension mismatch");
  const int n = rd.n;

  // lower cell of the interpolation stencil along each axis
  int base[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < rd.d; ++a) {
    const double g = (p[a] + rd.extent) / rd.h - 0.5;
    const int i0 = static_cast<int>(std::floor(g));
    if (i0 < 0 || i0 + 1 >= n) throw std::invalid_argument("interpolate_at: point outside the grid");
    base[a] = i0;
    frac[a] = g - i0;
  }

  // reject queries in or near obstacle cells (within a 2-cell margin)
  auto check_margin2 = [&](int i, int j, int k) {
    for (int dk = (rd.d == 3 ? -2 : 0); dk <= (rd.d == 3 ? 2 : 0); ++dk)
      for (int dj = -2; dj <= 2; ++dj)
        for (int di = -2; di <= 2; ++di) {
          const int ii = i + di, jj = j + dj, kk = k + dk;
          if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          if (rd.d == 3 && (kk < 0 || kk >= n)) continue;
          const size_t c = rd.d == 2 ? rd.idx2(ii, jj) : rd.idx3(ii, jj, kk);
          if (rd.mask[c] == CellType::obstacle)
            throw std::invalid_argument("interpolate_at: query within 2 cells of an obstacle");
        }
  };

  auto value_of = [&](size_t c) {
    return rd.mask[c] == CellType::interior ? values[c] : rd.boundary_data[c];
  };

  if (rd.d == 2) {
    check_margin2(base[0], base[1], 0);
    double out = 0.0;
    for (int dj = 0; dj <= 1; ++dj)
      for (int di = 0; di <= 1; ++di) {
        const double w = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]);
        out += w * value_of(rd.idx2(base[0] + di, base[1] + dj));
      }
    return out;
  }
  check_margin2(base[0], base[1], base[2]);
  double out = 0.0;
  for (int dk = 0; dk <= 1; ++dk)
    for (int dj = 0; dj <= 1; ++dj)
      for (int di = 0; di <= 1; ++di) {
        const double w = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]) *
                         (dk ? frac[2] : 1.0 - frac[2]);
        out += w * value_of(rd.idx3(base[0] + di, base[1] + dj, base[2] + dk));
      }
  return out;
}

FdSolution solve_harmonic_measure(const Domain& dom, const BoundaryTarget& target, int n,
                                  double tol) {
  // Nested iteration: solve on coarser grids first and prolong, which cuts
  // the fine-grid sweep count dramatically on large n.
  std::vector<int> ladder{n};
  while (ladder.back() > 256 && ladder.back() % 2 == 0 && dom.dimension() == 2)
    ladder.push_back(ladder.back() / 2);

  FdSolution sol;
  bool have_coarse = false;
  RasterDomain coarse_rd;
  std::vector<double> coarse_vals;

  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
    const int m = *it;
    RasterDomain rd = rasterize(dom, m, target);
    std::vector<double> vals(rd.cell_count(), 0.0);
    if (have_coarse) {
      // bilinear prolongation from the previous level (cell-centered 2:1)
      const int cm = coarse_rd.n;
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
          const size_t c = rd.idx2(i, j);
          if (rd.mask[c] != CellType::interior) continue;
          const double gx = (i + 0.5) / 2.0 - 0.5;
          const double gy = (j + 0.5) / 2.0 - 0.5;
          const int i0 = std::clamp(static_cast<int>(std::floor(gx)), 0, cm - 2);
          const int j0 = std::clamp(static_cast<int>(std::floor(gy)), 0, cm - 2);
          const double fx = std::clamp(gx - i0, 0.0, 1.0);
          const double fy = std::clamp(gy - j0, 0.0, 1.0);
          auto cv = [&](int ii, int jj) {
            const size_t cc = coarse_rd.idx2(ii, jj);
            return coarse_rd.mask[cc] == CellType::interior ? coarse_vals[cc]
                                                            : coarse_rd.boundary_data[cc];
          };
          vals[c] = (1 - fx) * (1 - fy) * cv(i0, j0) + fx * (1 - fy) * cv(i0 + 1, j0) +
                    (1 - fx) * fy * cv(i0, j0 + 1) + fx * fy * cv(i0 + 1, j0 + 1);
        }
    }
    const double level_tol = (m == n) ? tol : std::max(tol, 1e-8);
    const FdSolveStats stats = solve_dirichlet(rd, vals, level_tol);
    if (m == n) {
      sol.rd = std::move(rd);
      sol.values = std::move(vals);
      sol.stats = stats;
      return sol;
    }
    coarse_rd = std::move(rd);
    coarse_vals = std::move(vals);
    have_coarse = true;
  }
  throw std::logic_error("solve_harmonic_measure: empty refinement ladder");
}

double harmonic_measure_fd(const Domain& dom, const BoundaryTarget& target, const Point& p,
                           int n, double tol) {
  return solve_harmonic_measure(dom, target, n, tol).at(p);
}

void dump_solution(const FdSolution& sol, const std::string& path_prefix) {
  {
    std::ofstream bin(path_prefix + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("dump_solution: cannot open " + path_prefix + ".bin");
    bin.write(reinterpret_cast<const char*>(sol.values.data()),
              static_cast<std::streamsize>(sol.values.size() * sizeof(double)));
  }
  std::ofstream txt(path_prefix + ".txt");
  if (!txt) throw std::runtime_error("dump_solution: cannot open " + path_prefix + ".txt");
  char buf[256];
  std::snprintf(buf, sizeof(buf), "d %d\nn %d\nh %.17g\nbbox [%.17g, %.17g]^%d\n", sol.rd.d,
                sol.rd.n, sol.rd.h, -sol.rd.extent, sol.rd.extent, sol.rd.d);
  txt << buf;
}

}  // namespace bhp
