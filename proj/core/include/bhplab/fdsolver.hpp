#pragma once

// Finite-difference Dirichlet Laplace oracle on rasterized 2D/3D domains:
// the independent cross-check for the Monte Carlo engines. 5-point (7-point
// in 3D) mean-value equation, red-black SOR, bilinear/trilinear readout.

#include <cstdint>
#include <string>
#include <vector>

#include "bhplab/geometry.hpp"

namespace bhp {

enum class CellType : uint8_t { interior = 0, obstacle = 1, boundary = 2, exterior = 3 };

/// Rasterized domain over the square/cube [-extent, extent]^d with n cells
/// per side. Obstacle cells are the (at most one cell dilated) rasterization
/// of K; boundary cells are exterior cells face-adjacent to the interior.
struct RasterDomain {
  int d = 2;
  int n = 0;
  double extent = 1.0;
  double h = 0.0;       // cell size = 2 * extent / n
  std::vector<CellType> mask;         // n^d cells
  std::vector<double> boundary_data;  // same layout; read on obstacle/boundary cells

  size_t cell_count() const { return mask.size(); }
  size_t idx2(int i, int j) const {
    return static_cast<size_t>(i) + static_cast<size_t>(n) * static_cast<size_t>(j);
  }
  size_t idx3(int i, int j, int k) const {
    return static_cast<size_t>(i) +
           static_cast<size_t>(n) * (static_cast<size_t>(j) + static_cast<size_t>(n) * static_cast<size_t>(k));
  }
  double coord(int i) const { return -extent + (i + 0.5) * h; }
  /// Nearest cell index along one axis (not range-checked).
  int cell_of(double x) const { return static_cast<int>(std::floor((x + extent) / h)); }
};

/// Subset of the outer sphere receiving boundary value 1.
struct BoundaryTarget {
  enum class Kind { all, cap, halfspace, arc };
  Kind kind = Kind::all;
  double beta = 0.0;                   // cap: angle(y, +axis) < beta
  int axis = 0;                        // cap / halfspace axis
  int sign = 1;                        // halfspace: keeps sign * y[axis] > 0
  double theta_lo = 0.0, theta_hi = 0.0;  // arc (d = 2), radians in (-pi, pi]

  static BoundaryTarget all_sphere() { return {}; }
  static BoundaryTarget cap(double beta, int axis = 0);
  static BoundaryTarget halfspace(int sign, int axis = 0);
  static BoundaryTarget arc(double theta_lo, double theta_hi);

  /// Membership test for a unit direction vector.
  bool contains(const Point& y_dir) const;
};

/// Rasterize D = B(0,R) - K. Obstacle wins ties: a cell is an obstacle cell
/// when its center is within h/2 of K, which dilates K by at most one cell
/// and biases hitting probabilities upward by O(h).
RasterDomain rasterize(const Domain& dom, int n, const BoundaryTarget& target);

struct FdSolveStats {
  int sweeps = 0;
  double residual = 0.0;
};

/// Red-black SOR on the mean-value equation, to max-norm residual tol.
/// values must be sized to rd.cell_count(); its content seeds the iteration
/// (zeros for a cold start). Throws on non-convergence.
FdSolveStats solve_dirichlet(const RasterDomain& rd, std::vector<double>& values, double tol,
                             int max_sweeps = 2000000);

/// Bilinear (trilinear) interpolation of the solved field at p. Throws if p
/// falls in or within 2 cells of an obstacle cell, or outside the grid.
double interpolate_at(const RasterDomain& rd, const std::vector<double>& values, const Point& p);

struct FdSolution {
  RasterDomain rd;
  std::vector<double> values;
  FdSolveStats stats;

  double at(const Point& p) const { return interpolate_at(rd, values, p); }
};

/// Rasterize-and-solve for the harmonic measure of `target`, with nested
/// coarse-to-fine initialization for large grids.
FdSolution solve_harmonic_measure(const Domain& dom, const BoundaryTarget& target, int n,
                                  double tol);

/// Convenience single-point readout (d = 2, or d = 3 with n <= 128).
double harmonic_measure_fd(const Domain& dom, const BoundaryTarget& target, const Point& p,
                           int n, double tol);

/// Debug dump: <prefix>.bin holds the raw doubles, <prefix>.txt the header
/// (dimension, n, h, bounding box).
void dump_solution(const FdSolution& sol, const std::string& path_prefix);

}  // namespace bhp
