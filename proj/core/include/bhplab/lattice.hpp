#pragma once

// Simple random walk on Z^2 leaving the lattice ball Q(0,N) before hitting an
// obstacle set K in the closed left half-plane: exact exit-probability solve
// (SOR on the discrete mean-value equation) and a Monte Carlo cross-check.
//
// The walk clock is tau+ = min{ k >= 1 : S_k not in D }, so a start inside K
// still takes one step; the exact solver reproduces this with one explicit
// averaging step over the neighbors.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bhplab/stats.hpp"

namespace bhp {

struct LatticePoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Norm used for the lattice ball Q(0,N). The sources leave |.| unqualified;
/// Euclidean is the default, l-infinity is available behind this switch.
enum class LatticeNorm { euclidean, linf };

/// Exit-in-cone problem: D = Q(0,N) - K with K in { x1 <= 0 }, target cone
/// W = { 0 <= |x2| <= x1 }.
struct LatticeProblem {
  int N = 2;
  std::vector<LatticePoint> obstacle;
  LatticePoint start{0, 0};
  LatticeNorm norm = LatticeNorm::euclidean;
};

/// Exact exit probabilities: p_F = P(walk leaves Q before hitting K) and
/// p_exit_W = P(leaves Q off K through the cone W), as discrete harmonic
/// fields over D solved to the requested residual.
class ExactSolution {
 public:
  double p_F(LatticePoint p) const { return value(p, v_); }
  double p_exit_W(LatticePoint p) const { return value(p, u_); }
  /// P(S_{tau+} in W | F) at p; nullopt when p_F(p) == 0.
  std::optional<double> conditional(LatticePoint p) const;
  double residual() const { return residual_; }

 private:
  friend ExactSolution exact_solve(const LatticeProblem& prob, double tol, int max_sweeps);

  double value(LatticePoint p, const std::vector<double>& field) const;
  double boundary_value(LatticePoint p, bool cone_only) const;

  int N_ = 0;
  int box_ = 0;  // grid side = 2N + 3, covering [-N-1, N+1]^2
  LatticeNorm norm_ = LatticeNorm::euclidean;
  std::vector<uint8_t> mask_;  // 0 = D, 1 = K, 2 = outside Q
  std::vector<double> v_;      // p_F field
  std::vector<double> u_;      // p_exit_W field
  double residual_ = 0.0;

  size_t idx(LatticePoint p) const {
    return static_cast<size_t>(p.x + N_ + 1) +
           static_cast<size_t>(box_) * static_cast<size_t>(p.y + N_ + 1);
  }
};

/// SOR solve of both fields (relaxation 1.9, residual-based stopping).
/// Throws on non-convergence. N <= 256.
ExactSolution exact_solve(const LatticeProblem& prob, double tol = 1e-13, int max_sweeps = 400000);

struct LatticeMcResult {
  int64_t n_walks = 0;
  int64_t count_F = 0;
  int64_t count_W = 0;  // F-walks that exited through the cone
  std::optional<double> conditional;  // nullopt when F never occurred
  Interval conditional_ci;            // Wilson, on the F-subsample
  double p_F_hat = 0.0;
};

/// Monte Carlo estimate of P(S_{tau+} in W | F). Deterministic in
/// (problem, n_walks, seed) regardless of worker count.
LatticeMcResult lattice_mc(const LatticeProblem& prob, int64_t n_walks, uint64_t seed);

// --- obstacle generators used by the sweep scenarios ---

/// Straight slit {(-j, 0) : 0 <= j <= len}.
std::vector<LatticePoint> slit_obstacle(int len);
/// L-shape: slit of length `arm` plus a vertical arm at its far end
/// (sign picks up or down).
std::vector<LatticePoint> lshape_obstacle(int arm, int sign = 1);
/// Comb: horizontal spine on the negative x1-axis with `teeth` vertical
/// teeth of the given depth.
std::vector<LatticePoint> comb_obstacle(int len, int teeth, int depth);
/// Entire left lattice half-ball Q(0,N) in { x1 <= 0 }.
std::vector<LatticePoint> half_ball_obstacle(int N, LatticeNorm norm = LatticeNorm::euclidean);
/// Self-avoiding-ish random lattice path of the given length staying in
/// { x1 <= 0 }, started at the origin.
std::vector<LatticePoint> random_path_obstacle(int len, uint64_t seed);

struct LatticeSweepRow {
  std::string k_id;
  int N = 0;
  LatticePoint start;
  double p_F = 0.0;
  double p_cond = 0.0;
};

struct LatticeSweepResult {
  std::vector<LatticeSweepRow> rows;
  /// min over (K, start) of the conditional probability, per N: the
  /// empirical uniform lower bound.
  std::map<int, double> p1_by_N;
};

/// Exact sweep over an obstacle family (generators receive N) and start
/// points; starts are filtered to Q(0, N/16) with x1 >= 0.
LatticeSweepResult lattice_sweep(
    const std::vector<std::pair<std::string, std::function<std::vector<LatticePoint>(int)>>>& family,
    const std::vector<int>& Ns, const std::vector<LatticePoint>& starts,
    LatticeNorm norm = LatticeNorm::euclidean);

}  // namespace bhp
