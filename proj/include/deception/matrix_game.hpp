#pragma once

#include <vector>

#include "deception/types.hpp"

namespace deception {

// One-shot zero-sum matrix game; rows maximize, columns minimize.
struct MatrixGame {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;  // row-major

  double at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }
  double& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
};

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

// max_x (x^T M y) over row distributions against min_y: solved exactly
// by the LP formulation with a dense simplex (Bland's rule). The
// duality gap is certified against tol before returning.
MatrixGameSolution solve_matrix_game(const MatrixGame& m, double tol = 1e-6);

// max_a (M y)_a - min_b (x^T M)_b; zero at an exact equilibrium.
double duality_gap(const MatrixGame& m, const std::vector<double>& x,
                   const std::vector<double>& y);

}  // namespace deception
