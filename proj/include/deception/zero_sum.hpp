#pragma once

#include "deception/game.hpp"
#include "deception/matrix_game.hpp"
#include "deception/strategy.hpp"

namespace deception {

struct ZeroSumSolution {
  std::vector<double> values;  // 0 inside ASW1 / ASW2
  MixedStrategy pi1;           // stage-optimal outside the ASW regions,
  MixedStrategy pi2;           // uniform over available actions inside
  int iterations = 0;
  double residual = 0.0;
};

// Shapley value iteration for the discounted zero-sum reachability
// game: reward +1 on entering ASW1, -1 on entering ASW2, values frozen
// at 0 inside both regions. Requires gamma < 1.
ZeroSumSolution solve_zero_sum(const ConcurrentGame& game, const RegionSet& asw1,
                               const RegionSet& asw2, double gamma, double tol = 1e-3,
                               int max_iters = 1000000);

// Discounted probability of first entry into target_region under the
// fixed profile <pi1, pi2>; zero inside the region itself.
UtilityVector evaluate_profile(const ConcurrentGame& game, const MixedStrategy& pi1,
                               const MixedStrategy& pi2, int player,
                               const RegionSet& target_region, double gamma,
                               double tol = 1e-10);

}  // namespace deception
