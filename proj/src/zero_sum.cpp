#include "deception/zero_sum.hpp"

#include <algorithm>
#include <cmath>

namespace deception {

namespace {

MatrixGame stage_game(const ConcurrentGame& g, State s, const std::vector<int>& avail,
                      const RegionSet& asw1, const RegionSet& asw2,
                      const std::vector<double>& values, double gamma) {
  MatrixGame q;
  q.rows = static_cast<int>(avail.size());
  q.cols = g.num_a2();
  q.entries.assign(static_cast<size_t>(q.rows) * q.cols, 0.0);
  for (int r = 0; r < q.rows; ++r) {
    for (int b = 0; b < q.cols; ++b) {
      double acc = 0.0;
      for (const auto& [t, p] : g.row(s, avail[r], b)->entries) {
        double reward = asw1.contains(t) ? 1.0 : (asw2.contains(t) ? -1.0 : 0.0);
        double cont = (asw1.contains(t) || asw2.contains(t)) ? 0.0 : values[t];
        acc += p * (reward + gamma * cont);
      }
      q.at(r, b) = acc;
    }
  }
  return q;
}

}  // namespace

ZeroSumSolution solve_zero_sum(const ConcurrentGame& game, const RegionSet& asw1,
                               const RegionSet& asw2, double gamma, double tol,
                               int max_iters) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ConfigError("solve_zero_sum requires gamma in (0,1)");
  if (asw1.members.size() != static_cast<size_t>(game.num_states) ||
      asw2.members.size() != static_cast<size_t>(game.num_states))
    throw GameError("regions do not match the game's state space");

  std::vector<State> active;
  std::vector<std::vector<int>> avail(game.num_states);
  for (State s = 0; s < game.num_states; ++s) {
    if (asw1.contains(s) || asw2.contains(s)) continue;
    avail[s] = game.available_a1(s);
    if (avail[s].empty()) throw GameError("state without available P1 actions");
    active.push_back(s);
  }

  ZeroSumSolution sol;
  sol.values.assign(game.num_states, 0.0);
  std::vector<double> next(game.num_states, 0.0);

  for (sol.iterations = 0; sol.iterations < max_iters; ++sol.iterations) {
    double residual = 0.0;
    for (State s : active) {
      MatrixGame q = stage_game(game, s, avail[s], asw1, asw2, sol.values, gamma);
      double v = solve_matrix_game(q).value;
      residual = std::max(residual, std::abs(v - sol.values[s]));
      next[s] = v;
    }
    for (State s : active) sol.values[s] = next[s];
    sol.residual = residual;
    if (residual <= tol) break;
  }
  if (sol.residual > tol)
    throw NonConvergenceError("zero-sum value iteration did not reach tolerance");

  sol.pi1 = MixedStrategy::zeros(1, game.num_states, game.num_a1());
  sol.pi2 = MixedStrategy::zeros(2, game.num_states, game.num_a2());
  std::vector<int> all_b(game.num_a2());
  for (int b = 0; b < game.num_a2(); ++b) all_b[b] = b;

  for (State s = 0; s < game.num_states; ++s) {
    if (asw1.contains(s) || asw2.contains(s)) {
      auto a1 = game.available_a1(s);
      if (!a1.empty()) sol.pi1.set_uniform(s, a1);
      sol.pi2.set_uniform(s, all_b);
      continue;
    }
    MatrixGame q = stage_game(game, s, avail[s], asw1, asw2, sol.values, gamma);
    MatrixGameSolution mg = solve_matrix_game(q);
    auto r1 = sol.pi1.row(s);
    for (size_t k = 0; k < avail[s].size(); ++k) r1[avail[s][k]] = mg.row_strategy[k];
    auto r2 = sol.pi2.row(s);
    for (int b = 0; b < game.num_a2(); ++b) r2[b] = mg.col_strategy[b];
  }
  return sol;
}

UtilityVector evaluate_profile(const ConcurrentGame& game, const MixedStrategy& pi1,
                               const MixedStrategy& pi2, int player,
                               const RegionSet& target_region, double gamma,
                               double tol) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw ConfigError("evaluate_profile requires gamma in (0,1)");

  // Induced chain rows, entries (next, prob); built once.
  std::vector<std::vector<std::pair<State, double>>> chain(game.num_states);
  for (State s = 0; s < game.num_states; ++s) {
    if (target_region.contains(s)) continue;
    if (!pi1.defined_at(s) || !pi2.defined_at(s))
      throw GameError("strategy undefined at state " + game.state_names[s]);
    auto r1 = pi1.row(s);
    auto r2 = pi2.row(s);
    std::vector<double> mass(game.num_states, 0.0);
    for (int a = 0; a < game.num_a1(); ++a) {
      if (r1[a] <= 0.0) continue;
      for (int b = 0; b < game.num_a2(); ++b) {
        if (r2[b] <= 0.0) continue;
        const auto& row = game.row(s, a, b);
        if (!row)
          throw UndefinedTransitionError("profile uses an undefined transition");
        for (const auto& [t, p] : row->entries) mass[t] += r1[a] * r2[b] * p;
      }
    }
    for (State t = 0; t < game.num_states; ++t)
      if (mass[t] > 0.0) chain[s].push_back({t, mass[t]});
  }

  std::vector<double> u(game.num_states, 0.0);
  double residual = 1.0;
  int guard = 0;
  while (residual > tol) {
    residual = 0.0;
    for (State s = 0; s < game.num_states; ++s) {
      if (target_region.contains(s)) continue;
      double acc = 0.0;
      for (const auto& [t, p] : chain[s])
        acc += p * (target_region.contains(t) ? 1.0 : u[t]);
      acc *= gamma;
      residual = std::max(residual, std::abs(acc - u[s]));
      u[s] = acc;  // Gauss-Seidel sweep
    }
    if (++guard > 10000000)
      throw NonConvergenceError("profile evaluation did not converge");
  }

  UtilityVector out;
  out.player = player;
  out.values = std::move(u);
  return out;
}

}  // namespace deception
