#include "bhplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "bhplab/rng.hpp"

namespace bhp {

namespace {

bool in_ball(LatticePoint p, int N, LatticeNorm norm) {
  if (norm == LatticeNorm::linf) return std::max(std::abs(p.x), std::abs(p.y)) <= N;
  return static_cast<int64_t>(p.x) * p.x + static_cast<int64_t>(p.y) * p.y <=
         static_cast<int64_t>(N) * N;
}

bool in_cone_w(LatticePoint p) { return p.x >= 0 && std::abs(p.y) <= p.x; }

void validate(const LatticeProblem& prob) {
  if (prob.N < 2 || prob.N > 256) throw std::invalid_argument("LatticeProblem: N must be in [2,256]");
  for (const auto& k : prob.obstacle) {
    if (k.x > 0) throw std::invalid_argument("LatticeProblem: K must lie in {x1 <= 0}");
    if (!in_ball(k, prob.N, prob.norm))
      throw std::invalid_argument("LatticeProblem: K must lie in Q(0,N)");
  }
  if (!in_ball(prob.start, prob.N, prob.norm))
    throw std::invalid_argument("LatticeProblem: start must lie in Q(0,N)");
}

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

}  // namespace

double ExactSolution::boundary_value(LatticePoint p, bool cone_only) const {
  // Exit value at a non-D point: 1 on the target set (off K, outside Q,
  // and in W when cone_only), else 0.
  if (mask_[idx(p)] != 2) return 0.0;  // in K (or in D, which boundary_value never sees)
  if (cone_only && !in_cone_w(p)) return 0.0;
  return 1.0;
}

double ExactSolution::value(LatticePoint p, const std::vector<double>& field) const {
  const bool cone_only = (&field == &u_);
  if (std::max(std::abs(p.x), std::abs(p.y)) > N_ + 1)
    throw std::invalid_argument("ExactSolution: query point outside the solved box");
  const uint8_t m = mask_[idx(p)];
  if (m == 0) return field[idx(p)];
  if (m == 2) return boundary_value(p, cone_only);
  // p in K: tau+ forces one step; average the four neighbors.
  double s = 0.0;
  for (int dir = 0; dir < 4; ++dir) {
    const LatticePoint q{p.x + kDx[dir], p.y + kDy[dir]};
    s += mask_[idx(q)] == 0 ? field[idx(q)] : boundary_value(q, cone_only);
  }
  return 0.25 * s;
}

std::optional<double> ExactSolution::conditional(LatticePoint p) const {
  const double vf = p_F(p);
  if (vf <= 0.0) return std::nullopt;
  return p_exit_W(p) / vf;
}

ExactSolution exact_solve(const LatticeProblem& prob, double tol, int max_sweeps) {
  validate(prob);
  ExactSolution sol;
  sol.N_ = prob.N;
  sol.box_ = 2 * prob.N + 3;
  sol.norm_ = prob.norm;
  const size_t cells = static_cast<size_t>(sol.box_) * static_cast<size_t>(sol.box_);
  sol.mask_.assign(cells, 2);

  for (int y = -prob.N; y <= prob.N; ++y)
    for (int x = -prob.N; x <= prob.N; ++x)
      if (in_ball({x, y}, prob.N, prob.norm)) sol.mask_[sol.idx({x, y})] = 0;
  for (const auto& k : prob.obstacle) sol.mask_[sol.idx(k)] = 1;

  // Collect D cells once; SOR sweeps run over this list.
  std::vector<LatticePoint> interior;
  interior.reserve(cells);
  for (int y = -prob.N; y <= prob.N; ++y)
    for (int x = -prob.N; x <= prob.N; ++x)
      if (sol.mask_[sol.idx({x, y})] == 0) interior.push_back({x, y});

  const double omega = 1.9;
  auto solve_field = [&](std::vector<double>& field, bool cone_only) {
    field.assign(cells, 0.0);
    auto nb_value = [&](LatticePoint q) {
      return sol.mask_[sol.idx(q)] == 0 ? field[sol.idx(q)] : sol.boundary_value(q, cone_only);
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      for (const auto& p : interior) {
        double avg = 0.0;
        for (int dir = 0; dir < 4; ++dir) avg += nb_value({p.x + kDx[dir], p.y + kDy[dir]});
        avg *= 0.25;
        field[sol.idx(p)] += omega * (avg - field[sol.idx(p)]);
      }
      if (sweep % 16 == 15) {
        double res = 0.0;
        for (const auto& p : interior) {
          double avg = 0.0;
          for (int dir = 0; dir < 4; ++dir) avg += nb_value({p.x + kDx[dir], p.y + kDy[dir]});
          res = std::max(res, std::abs(0.25 * avg - field[sol.idx(p)]));
        }
        if (res <= tol) return res;
      }
    }
    throw std::runtime_error("exact_solve: SOR did not reach the residual tolerance");
  };

  // boundary_value() dispatches on which field is queried, so u_ must be
  // solved through sol.u_ itself (not a temporary).
  const double res_v = solve_field(sol.v_, false);
  const double res_u = solve_field(sol.u_, true);
  sol.residual_ = std::max(res_v, res_u);
  return sol;
}

LatticeMcResult lattice_mc(const LatticeProblem& prob, int64_t n_walks, uint64_t seed) {
  validate(prob);
  if (n_walks < 0) throw std::invalid_argument("lattice_mc: n_walks must be >= 0");

  // Membership bitmap over [-N-1, N+1]^2: 0 = D, 1 = K, 2 = outside Q.
  const int N = prob.N;
  const int box = 2 * N + 3;
  std::vector<uint8_t> mask(static_cast<size_t>(box) * box, 2);
  auto at = [&](int x, int y) -> uint8_t& {
    return mask[static_cast<size_t>(x + N + 1) + static_cast<size_t>(box) * (y + N + 1)];
  };
  for (int y = -N; y <= N; ++y)
    for (int x = -N; x <= N; ++x)
      if (in_ball({x, y}, N, prob.norm)) at(x, y) = 0;
  for (const auto& k : prob.obstacle) at(k.x, k.y) = 1;

  const int64_t blocks = 256;
  std::vector<std::array<int64_t, 2>> tallies(static_cast<size_t>(blocks));

#pragma omp parallel for schedule(dynamic)
  for (int64_t b = 0; b < blocks; ++b) {
    const int64_t lo = b * n_walks / blocks;
    const int64_t hi = (b + 1) * n_walks / blocks;
    if (lo == hi) continue;
    RngStream rng(seed, static_cast<uint64_t>(b));
    auto& t = tallies[static_cast<size_t>(b)];
    for (int64_t w = lo; w < hi; ++w) {
      int x = prob.start.x, y = prob.start.y;
      // tau+ = min{k >= 1 : S_k not in D}: always take the first step.
      for (;;) {
        const unsigned dir = static_cast<unsigned>(rng.next_u64() >> 62);
        x += kDx[dir];
        y += kDy[dir];
        if (at(x, y) != 0) break;
      }
      if (at(x, y) == 2) {  // left Q without hitting K: event F
        ++t[0];
        if (in_cone_w({x, y})) ++t[1];
      }
    }
  }

  LatticeMcResult out;
  out.n_walks = n_walks;
  for (const auto& t : tallies) {
    out.count_F += t[0];
    out.count_W += t[1];
  }
  out.p_F_hat = n_walks > 0 ? static_cast<double>(out.count_F) / static_cast<double>(n_walks) : 0.0;
  if (out.count_F > 0) {
    out.conditional = static_cast<double>(out.count_W) / static_cast<double>(out.count_F);
    out.conditional_ci = wilson_interval(out.count_W, out.count_F);
  }
  return out;
}

std::vector<LatticePoint> slit_obstacle(int len) {
  std::vector<LatticePoint> k;
  for (int j = 0; j <= len; ++j) k.push_back({-j, 0});
  return k;
}

std::vector<LatticePoint> lshape_obstacle(int arm, int sign) {
  std::vector<LatticePoint> k = slit_obstacle(arm);
  for (int j = 1; j <= arm / 2; ++j) k.push_back({-arm, sign >= 0 ? j : -j});
  return k;
}

std::vector<LatticePoint> comb_obstacle(int len, int teeth, int depth) {
  std::vector<LatticePoint> k = slit_obstacle(len);
  if (teeth < 1) return k;
  for (int t = 0; t < teeth; ++t) {
    const int x = -(t * len) / std::max(1, teeth - 1);
    for (int j = 1; j <= depth; ++j) k.push_back({x, j});
  }
  // de-duplicate tooth/spine overlaps
  std::set<std::pair<int, int>> uniq;
  std::vector<LatticePoint> out;
  for (const auto& p : k)
    if (uniq.insert({p.x, p.y}).second) out.push_back(p);
  return out;
}

std::vector<LatticePoint> half_ball_obstacle(int N, LatticeNorm norm) {
  std::vector<LatticePoint> k;
  for (int y = -N; y <= N; ++y)
    for (int x = -N; x <= 0; ++x)
      if (in_ball({x, y}, N, norm)) k.push_back({x, y});
  return k;
}

std::vector<LatticePoint> random_path_obstacle(int len, uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<LatticePoint> k{{0, 0}};
  std::set<std::pair<int, int>> seen{{0, 0}};
  int x = 0, y = 0;
  int guard = 0;
  while (static_cast<int>(k.size()) <= len && guard < 100 * (len + 1)) {
    ++guard;
    const unsigned dir = static_cast<unsigned>(rng.next_u64() >> 62);
    const int nx = x + kDx[dir], ny = y + kDy[dir];
    if (nx > 0) continue;  // stay in the closed left half-plane
    x = nx;
    y = ny;
    if (seen.insert({x, y}).second) k.push_back({x, y});
  }
  return k;
}

LatticeSweepResult lattice_sweep(
    const std::vector<std::pair<std::string, std::function<std::vector<LatticePoint>(int)>>>& family,
    const std::vector<int>& Ns, const std::vector<LatticePoint>& starts, LatticeNorm norm) {
  LatticeSweepResult out;
  for (int N : Ns) {
    double p1 = std::numeric_limits<double>::infinity();
    for (const auto& [k_id, gen] : family) {
      LatticeProblem prob;
      prob.N = N;
      prob.norm = norm;
      prob.obstacle = gen(N);
      const ExactSolution sol = exact_solve(prob);
      for (const auto& s : starts) {
        if (s.x < 0) continue;
        if (!in_ball(s, std::max(1, N / 16), norm)) continue;
        const double pF = sol.p_F(s);
        const auto cond = sol.conditional(s);
        if (!cond) continue;
        out.rows.push_back({k_id, N, s, pF, *cond});
        p1 = std::min(p1, *cond);
      }
    }
    if (std::isfinite(p1)) out.p1_by_N[N] = p1;
  }
  return out;
}

}  // namespace bhp
