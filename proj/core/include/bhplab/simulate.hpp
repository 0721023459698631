#pragma once

// Walk-on-spheres Monte Carlo for Brownian exit distributions from
// D = B(0,R) - K: exit sampling, paired (u,v) estimators on a shared path
// ensemble, and ratio-bound reports.
//
// Reproducibility contract: every ensemble is split over a fixed number of
// RNG stream blocks (independent of worker count) and aggregated with
// integer counters, so results are a pure function of (config, seed).

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "bhplab/geometry.hpp"
#include "bhplab/rng.hpp"
#include "bhplab/stats.hpp"

namespace bhp {

struct WosConfig {
  double shell_eps = 1e-5;    // boundary-capture shell; must be < 1e-2 * outer_radius
  int max_steps = 100000;
  int64_t n_paths = 0;
  double safety_factor = 1.0; // fraction of the maximal inscribed radius used per step
};

enum class ExitKind { sphere, obstacle, censored };

struct ExitRecord {
  ExitKind kind = ExitKind::censored;
  Point exit_point;  // for kind == sphere: radial projection onto the sphere
  int steps = 0;
};

/// Paired Monte Carlo estimate of v = P(exit on the sphere off K) and
/// u = P(exit on the sphere inside the cone), from the same path ensemble.
/// The u-success set is a subset of the v-success set path by path, so
/// count_u <= count_v holds exactly.
struct PairedEstimate {
  int64_t n = 0;
  int64_t count_v = 0;
  int64_t count_u = 0;
  int64_t censored = 0;
  double u_hat = 0.0;
  double v_hat = 0.0;
  Interval ci_u;  // Wilson 95%
  Interval ci_v;

  double ratio() const { return count_v > 0 ? static_cast<double>(count_u) / count_v : 0.0; }
  /// Wilson interval for u/v, conditional on the v-successes.
  Interval ratio_ci() const { return wilson_interval(count_u, count_v); }
};

/// Uniform point on the unit (d-1)-sphere (normalized Gaussians).
Point sample_unit_sphere(RngStream& rng, int d);

/// Single walk-on-spheres path from start until capture in the shell_eps
/// shell of the sphere or of K. A point within the shell of both is
/// classified as an obstacle hit (conservative for u and v).
ExitRecord wos_exit(const Point& start, const Domain& dom, const WosConfig& cfg, RngStream& rng);

/// Number of RNG stream blocks every ensemble is partitioned into.
inline constexpr uint64_t kEnsembleBlocks = 256;

struct EnsembleCounts {
  std::array<int64_t, 4> counts{};  // classifier bit i -> counts[i]
  int64_t censored = 0;
  int64_t n = 0;
};

/// Runs cfg.n_paths exits from start and tallies classifier bits per path.
/// classify receives every non-censored exit and returns a bitmask over the
/// EnsembleCounts slots. stream_offset shifts the RNG block indices so
/// several ensembles can share one seed without stream reuse.
EnsembleCounts run_wos_ensemble(const Point& start, const Domain& dom, const WosConfig& cfg,
                                uint64_t seed, uint64_t stream_offset,
                                const std::function<uint32_t(const ExitRecord&)>& classify);

/// Paired estimator of (u, v) for the given cone. Throws if more than 1% of
/// paths are censored.
PairedEstimate estimate_uv(const Point& start, const Domain& dom, const ConeSpec& cone,
                           const WosConfig& cfg, uint64_t seed, uint64_t stream_offset = 0);

struct RatioBoundRow {
  Point point;
  PairedEstimate est;
};

struct RatioBoundReport {
  std::vector<RatioBoundRow> rows;
  double min_ratio = 0.0;               // min over points of u_hat / v_hat
  double worst_double_ratio = 0.0;      // max over ordered pairs of ratio_i / ratio_j
  double worst_double_ratio_hi = 0.0;   // CI-propagated upper bound (inf if a ratio CI hits 0)
};

/// Per-point paired estimates plus the worst pairwise double ratio. Points
/// must lie in B(0, outer_radius/2), have positive first coordinate, and be
/// inside D.
RatioBoundReport estimate_ratio_bound(const std::vector<Point>& points, const Domain& dom,
                                      const ConeSpec& cone, const WosConfig& cfg, uint64_t seed);

}  // namespace bhp
