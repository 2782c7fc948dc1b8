#pragma once

#include <cstdint>
#include <vector>

#include "deception/detection.hpp"
#include "deception/perception.hpp"

namespace deception {

// Uniform discretization of the CUSUM statistic: intervals
// [(i-1)*delta, i*delta] for i = 1..n with n*delta = c_gamma, plus an
// exceed level for phi > c_gamma. Levels are 1-based; level_exceed()
// is the label for the overflow level. Shared endpoints belong to the
// lower interval.
struct PhiDiscretization {
  double delta = 0.2;
  double c_gamma = 2.0;
  int n = 10;

  PhiDiscretization() = default;
  PhiDiscretization(double delta_, double c_gamma_);

  int level_exceed() const { return n + 1; }
  int num_levels() const { return n + 1; }  // including the exceed label
  int level_of(double phi) const;
  double midpoint(int level) const;  // (2i-1)*delta/2, levels 1..n
};

// Semi-MDP of the one-time-switch planning problem. Decision states are
// (game state, phi level, switch flag); nature states add the sampled
// joint action. Macro-action 0 plays the perceptual best response,
// macro-action 1 the true-game best response (the only choice once the
// flag is set).
struct SemiMDP {
  struct NatureState {
    State s = 0;
    int level = 1;
    uint8_t flag = 0;
    int a = 0;
    int b = 0;
    double reward = 0.0;
    bool to_sink = false;
    std::vector<std::pair<int, double>> next;  // decision ids
  };

  int num_game_states = 0;
  PhiDiscretization disc;
  double gamma = 0.95;
  double scale = 1.0;
  bool strong_opponent = false;

  std::vector<NatureState> nature;
  // Per decision id: outgoing (nature idx, prob) per macro-action.
  // act_perc is empty where the perceptual macro is unavailable (flag 1).
  std::vector<std::vector<std::pair<int, double>>> act_perc;
  std::vector<std::vector<std::pair<int, double>>> act_true;

  int num_decision_states() const { return num_game_states * disc.num_levels() * 2; }
  int decision_id(State s, int level, int flag) const {
    return (s * disc.num_levels() + (level - 1)) * 2 + flag;
  }
  State game_state_of(int id) const { return id / (2 * disc.num_levels()); }
  int level_of_id(int id) const { return (id / 2) % disc.num_levels() + 1; }
  int flag_of_id(int id) const { return id & 1; }
};

enum MacroAction : uint8_t { kMacroPerceptual = 0, kMacroTrue = 1 };

struct SwitchPolicy {
  std::vector<uint8_t> macro;  // per decision id
};

struct SemiMDPSolution {
  std::vector<double> v_decision;
  std::vector<double> v_nature;
  SwitchPolicy policy;
  int iterations = 0;
  double residual = 0.0;
};

// Materializes Delta and R of the switching semi-MDP. reward_scale 1
// solves on the [-1,1] reward; 100 reproduces the enlarged scale.
SemiMDP build_semi_mdp(const HypergameBundle& bundle, const DetectorConfig& detector_cfg,
                       double delta, double reward_scale = 1.0);

// Zero-delay-detection variant: any nature state reached after the
// switch resolves immediately at the detection reward.
SemiMDP build_strong_opponent_mdp(const HypergameBundle& bundle,
                                  const DetectorConfig& detector_cfg, double delta,
                                  double reward_scale = 1.0);

// Value iteration; greedy extraction breaks ties toward the perceptual
// macro so the deviation is deferred.
SemiMDPSolution solve_semi_mdp(const SemiMDP& m, double bellman_tol,
                               int max_iters = 1000000);

// Evaluates a fixed macro policy in (possibly another) semi-MDP.
std::vector<double> evaluate_switch_policy(const SemiMDP& m, const SwitchPolicy& policy,
                                           double tol, int max_iters = 1000000);

struct VodReport {
  std::vector<State> states;      // initial game states outside both regions
  std::vector<double> value;      // V(s, level 1, flag 0)
  std::vector<double> ne_payoff;  // u1 - u2 under <pi1, pi2>, same scale
  std::vector<double> vod;        // value - ne_payoff
  double scale = 1.0;

  double vod_at(State s) const;
};

// VoD(s) = V(s, level 1, 0) - (u1 - u2)(s, pi1, pi2) for every initial
// state outside ASW1 and ASW2 (Theorem-1 lower bound on the optimal
// value). The net payoff u1 - u2 is the baseline measured in the same
// reward convention as the semi-MDP, which makes the bound sign-exact:
// the minimum VoD over initial states is zero, never negative.
VodReport value_of_deception(const SemiMDPSolution& sol, const SemiMDP& m,
                             const HypergameBundle& bundle);

}  // namespace deception
