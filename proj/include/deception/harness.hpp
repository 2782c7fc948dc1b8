#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deception/planner.hpp"
#include "deception/soccer.hpp"

namespace deception {

enum class RolloutOutcome { reached_asw1, reached_asw2, detected, horizon };

struct RolloutRecord {
  Play play;
  std::vector<double> phi_trace;  // phi after each step
  int switch_step = -1;           // -1: never switched
  int detection_step = -1;        // -1: not detected
  RolloutOutcome outcome = RolloutOutcome::horizon;
  double payoff = 0.0;            // discounted, mirrors the semi-MDP reward
  int false_alarms = 0;           // detections observed before any switch
};

// Simulates the true game: P1 draws from the macro policy's current
// strategy, P2 from the BSR completion; the CUSUM detector folds over
// observations once the switch flag is set. Detection resolves at the
// planner's proxy reward u1(s)*gamma^N so rollout payoffs and semi-MDP
// values are directly comparable. Deterministic given the seed.
RolloutRecord rollout(const HypergameBundle& bundle, const SemiMDP& mdp,
                      const SwitchPolicy& policy, const BSRCompletion& completion,
                      const DetectorConfig& detector_cfg, State s0, int horizon,
                      uint64_t seed);

struct MonteCarloEstimate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal-approximation interval
  int n = 0;
};

MonteCarloEstimate monte_carlo_payoff(const HypergameBundle& bundle, const SemiMDP& mdp,
                                      const SwitchPolicy& policy,
                                      const BSRCompletion& completion,
                                      const DetectorConfig& detector_cfg, State s0,
                                      int horizon, int n, uint64_t seed);

// Per-(P1 cell, P2 cell) table of VoD for one ball-possession case.
// Cells inside an almost-sure winning region are NaN (VoD undefined).
struct HeatmapTable {
  int num_cells = 0;
  bool ball_with_p1 = false;
  std::vector<double> vod;  // num_cells x num_cells, row = P1 cell
  double min_vod = 0.0;
  double max_vod = 0.0;

  double at(int p1_cell, int p2_cell) const {
    return vod[static_cast<size_t>(p1_cell) * num_cells + p2_cell];
  }
  std::string to_csv(const SoccerGame& sg) const;
};

HeatmapTable vod_heatmap(const SoccerGame& sg, const VodReport& report,
                         bool ball_with_p1);

struct SensitivityRow {
  double c_gamma = 0.0;
  double max_difference = 0.0;   // max over initial states of u1_ref - u1_i
  double reference_value = 0.0;  // u1_ref at the maximizing state
  State argmax_state = -1;
};

// Re-evaluates the reference switching policy in semi-MDPs built for
// other detection thresholds; levels are matched through their phi
// midpoints.
std::vector<SensitivityRow> sensitivity_sweep(const HypergameBundle& bundle,
                                              const SemiMDP& reference_mdp,
                                              const SwitchPolicy& reference_policy,
                                              const DetectorConfig& detector_cfg,
                                              const std::vector<double>& thresholds,
                                              double eval_tol);

struct StrongOpponentReport {
  std::vector<State> states;
  std::vector<double> realistic;   // value of the realistic-MDP policy
  std::vector<double> strong;      // value of the strong-opponent policy,
                                   // both evaluated in the realistic MDP
  std::vector<double> difference;  // realistic - strong
  double min_difference = 0.0;
  double max_difference = 0.0;
};

StrongOpponentReport strong_opponent_report(const HypergameBundle& bundle,
                                            const DetectorConfig& detector_cfg,
                                            double delta, double reward_scale,
                                            double bellman_tol);

// (seed, index) -> per-rollout stream seed.
uint64_t derive_seed(uint64_t seed, uint64_t index);

}  // namespace deception
