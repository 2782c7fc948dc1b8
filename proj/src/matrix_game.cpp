#include "deception/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace deception {

double duality_gap(const MatrixGame& m, const std::vector<double>& x,
                   const std::vector<double>& y) {
  double best_row = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < m.rows; ++r) {
    double v = 0.0;
    for (int c = 0; c < m.cols; ++c) v += m.at(r, c) * y[c];
    best_row = std::max(best_row, v);
  }
  double best_col = std::numeric_limits<double>::infinity();
  for (int c = 0; c < m.cols; ++c) {
    double v = 0.0;
    for (int r = 0; r < m.rows; ++r) v += m.at(r, c) * x[r];
    best_col = std::min(best_col, v);
  }
  return best_row - best_col;
}

namespace {

constexpr double kPivotEps = 1e-12;

// Dense tableau simplex for: max c^T z  s.t.  A z <= b, z >= 0, b >= 0.
// The all-slack basis is feasible, so no phase 1 is needed. Bland's
// rule keeps it cycle-free; problems here are at most ~5x5.
struct Simplex {
  int m, n;  // constraints, structural variables
  std::vector<std::vector<double>> t;  // (m+1) x (n+m+1)
  std::vector<int> basis;

  Simplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
          const std::vector<double>& c)
      : m(static_cast<int>(a.size())), n(static_cast<int>(c.size())) {
    t.assign(m + 1, std::vector<double>(n + m + 1, 0.0));
    basis.resize(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
      t[i][n + i] = 1.0;
      t[i][n + m] = b[i];
      basis[i] = n + i;
    }
    for (int j = 0; j < n; ++j) t[m][j] = -c[j];
  }

  void pivot(int pr, int pc) {
    double inv = 1.0 / t[pr][pc];
    for (double& v : t[pr]) v *= inv;
    for (int i = 0; i <= m; ++i) {
      if (i == pr) continue;
      double f = t[i][pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }

  void run() {
    for (int iter = 0; iter < 10000; ++iter) {
      int pc = -1;
      for (int j = 0; j < n + m; ++j)
        if (t[m][j] < -kPivotEps) { pc = j; break; }
      if (pc < 0) return;
      int pr = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t[i][pc] <= kPivotEps) continue;
        double ratio = t[i][n + m] / t[i][pc];
        if (ratio < best - kPivotEps ||
            (ratio < best + kPivotEps && (pr < 0 || basis[i] < basis[pr]))) {
          best = ratio;
          pr = i;
        }
      }
      if (pr < 0) throw NonConvergenceError("matrix game LP unbounded");
      pivot(pr, pc);
    }
    throw NonConvergenceError("matrix game LP iteration budget exceeded");
  }

  double objective() const { return t[m][n + m]; }
  double primal(int j) const {
    for (int i = 0; i < m; ++i)
      if (basis[i] == j) return t[i][n + m];
    return 0.0;
  }
  double dual(int i) const { return t[m][n + i]; }
};

void normalize(std::vector<double>& v) {
  double sum = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  for (double& x : v) x /= sum;
}

// Solves the bordered equilibrium system for a square support:
//   B y = v 1, sum y = 1   (and the transpose for x).
// Gaussian elimination with partial pivoting in long double; returns
// false when the system is singular.
bool solve_bordered(const std::vector<long double>& b_mat, int k,
                    std::vector<long double>& out, bool transpose) {
  int n = k + 1;
  std::vector<long double> a(static_cast<size_t>(n) * (n + 1), 0.0L);
  auto at = [&](int r, int c) -> long double& { return a[static_cast<size_t>(r) * (n + 1) + c]; };
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c)
      at(r, c) = transpose ? b_mat[static_cast<size_t>(c) * k + r]
                           : b_mat[static_cast<size_t>(r) * k + c];
    at(r, k) = -1.0L;  // -v
    at(r, n) = 0.0L;
  }
  for (int c = 0; c < k; ++c) at(k, c) = 1.0L;
  at(k, n) = 1.0L;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs((double)at(r, col)) > std::abs((double)at(piv, col))) piv = r;
    if (std::abs((double)at(piv, col)) < 1e-14) return false;
    if (piv != col)
      for (int c = 0; c <= n; ++c) std::swap(at(piv, c), at(col, c));
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      long double f = at(r, col) / at(col, col);
      if (f == 0.0L) continue;
      for (int c = col; c <= n; ++c) at(r, c) -= f * at(col, c);
    }
  }
  out.resize(n);
  for (int r = 0; r < n; ++r) out[r] = at(r, n) / at(r, r);
  return true;
}

// Shapley-Snow style search: extreme optimal strategy pairs live on
// square submatrices, so enumerating square supports (at most 2^5 per
// side here) finds a certified equilibrium when the simplex solution is
// too ill-conditioned. Only invoked after the gap check fails.
bool support_enumeration(const MatrixGame& m, double tol, MatrixGameSolution& sol) {
  double best_gap = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= std::min(m.rows, m.cols); ++k) {
    std::vector<int> ri, ci;
    // Enumerate k-subsets via bitmasks.
    for (uint32_t rmask = 0; rmask < (1u << m.rows); ++rmask) {
      if (__builtin_popcount(rmask) != k) continue;
      ri.clear();
      for (int r = 0; r < m.rows; ++r)
        if (rmask & (1u << r)) ri.push_back(r);
      for (uint32_t cmask = 0; cmask < (1u << m.cols); ++cmask) {
        if (__builtin_popcount(cmask) != k) continue;
        ci.clear();
        for (int c = 0; c < m.cols; ++c)
          if (cmask & (1u << c)) ci.push_back(c);

        std::vector<long double> b(static_cast<size_t>(k) * k);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) b[static_cast<size_t>(r) * k + c] = m.at(ri[r], ci[c]);
        std::vector<long double> ys, xs;
        if (!solve_bordered(b, k, ys, false)) continue;
        if (!solve_bordered(b, k, xs, true)) continue;

        MatrixGameSolution cand;
        cand.row_strategy.assign(m.rows, 0.0);
        cand.col_strategy.assign(m.cols, 0.0);
        bool nonneg = true;
        for (int i = 0; i < k; ++i) {
          if (xs[i] < -1e-9 || ys[i] < -1e-9) nonneg = false;
          cand.row_strategy[ri[i]] = static_cast<double>(xs[i]);
          cand.col_strategy[ci[i]] = static_cast<double>(ys[i]);
        }
        if (!nonneg) continue;
        normalize(cand.row_strategy);
        normalize(cand.col_strategy);
        double gap = duality_gap(m, cand.row_strategy, cand.col_strategy);
        if (gap < best_gap) {
          best_gap = gap;
          double v = 0.0;
          for (int c = 0; c < m.cols; ++c) {
            double col = 0.0;
            for (int r = 0; r < m.rows; ++r) col += m.at(r, c) * cand.row_strategy[r];
            v += col * cand.col_strategy[c];
          }
          cand.value = v;
          sol = cand;
          if (best_gap <= tol) return true;
        }
      }
    }
  }
  return best_gap <= tol;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const MatrixGame& m, double tol) {
  if (m.rows == 0 || m.cols == 0 ||
      m.entries.size() != static_cast<size_t>(m.rows) * m.cols)
    throw GameError("matrix game must be nonempty");
  for (double v : m.entries)
    if (!std::isfinite(v)) throw GameError("matrix game entries must be finite");

  double lo = *std::min_element(m.entries.begin(), m.entries.end());
  double shift = 1.0 - lo;

  // Column player's LP: max 1^T q  s.t.  M' q <= 1, q >= 0, with
  // M' = M + shift > 0. Then v' = 1 / (1^T q*), y = v' q, and the dual
  // multipliers scale to the row strategy x.
  std::vector<std::vector<double>> a(m.rows, std::vector<double>(m.cols));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) a[r][c] = m.at(r, c) + shift;
  std::vector<double> b(m.rows, 1.0), c(m.cols, 1.0);

  Simplex lp(a, b, c);
  lp.run();

  double inv_v = lp.objective();
  if (inv_v <= 0.0) throw NonConvergenceError("degenerate matrix game LP");
  double v_shifted = 1.0 / inv_v;

  MatrixGameSolution sol;
  sol.value = v_shifted - shift;
  sol.col_strategy.resize(m.cols);
  for (int j = 0; j < m.cols; ++j) sol.col_strategy[j] = lp.primal(j) * v_shifted;
  sol.row_strategy.resize(m.rows);
  for (int i = 0; i < m.rows; ++i) sol.row_strategy[i] = lp.dual(i) * v_shifted;
  normalize(sol.row_strategy);
  normalize(sol.col_strategy);

  if (duality_gap(m, sol.row_strategy, sol.col_strategy) > tol) {
    // Near-duplicate rows make the tableau ill-conditioned; fall back
    // to exact equilibria on square supports.
    if (!support_enumeration(m, tol, sol))
      throw NonConvergenceError("matrix game solution exceeds duality gap tolerance");
  }
  return sol;
}

}  // namespace deception
