#pragma once

#include <optional>
#include <vector>

#include "deception/asw.hpp"
#include "deception/game.hpp"
#include "deception/strategy.hpp"
#include "deception/zero_sum.hpp"

namespace deception {

// P2's view of the game: the true kernel restricted to the P1 actions
// she knows about; rows of hidden actions become undefined. Action
// indices are shared with the true game so strategies line up.
ConcurrentGame derive_perceptual_game(const ConcurrentGame& game,
                                      const std::vector<int>& visible);

// Everything the planner and detector need about the level-2 hypergame:
// both games, all four ASW regions, ASW and NE strategies, the
// composite per-player strategies (ASW strategy inside the own region,
// NE strategy elsewhere), and u1 under the true-game equilibrium.
struct HypergameBundle {
  ConcurrentGame game;        // G
  ConcurrentGame perceptual;  // G2
  std::vector<int> visible;   // A1 indices of A1^2
  double gamma = 0.95;

  RegionSet asw1, asw2;        // true game
  RegionSet asw1_p, asw2_p;    // perceptual game
  MixedStrategy pi1_asw, pi2_asw, pi1p_asw, pi2p_asw;
  MixedStrategy pi1_ne, pi2_ne, pi1p_ne, pi2p_ne;
  // Composites: the strategies actually played in each game.
  MixedStrategy pi1_true, pi2_true, pi1_perc, pi2_perc;

  std::vector<double> values_true, values_perc;  // zero-sum values
  UtilityVector u1;  // u1(s, pi1, pi2) toward ASW1 in G
};

HypergameBundle build_hypergame(const ConcurrentGame& game,
                                const std::vector<int>& visible, double gamma,
                                double tol = 1e-3);

// P1 plays pi1^2 until the switch at step t; P2 detects at t+k1 and
// has learned the true action set by t+k1+k2.
struct DeceptionTimeline {
  int switch_step = 0;
  int detect_delay = 0;
  int learn_delay = 0;

  void validate() const {
    if (switch_step < 0 || detect_delay < 0 || learn_delay < 0)
      throw ConfigError("timeline steps must be nonnegative");
  }
};

enum class Phase { perceptual, undefined_window, true_game };

// P1's (incomplete) model of P2's subjectively rationalizable play.
struct BSRModel {
  const HypergameBundle* bundle = nullptr;
  DeceptionTimeline timeline;

  Phase phase(int step) const {
    int detect = timeline.switch_step + timeline.detect_delay;
    if (step <= detect) return Phase::perceptual;
    if (step <= detect + timeline.learn_delay) return Phase::undefined_window;
    return Phase::true_game;
  }
};

// P2's predicted action distribution at step i in state s, or nullopt
// inside the window where P1 cannot predict her.
std::optional<std::vector<double>> bsr_action(const BSRModel& model, State s, int step);

enum class FillPolicy { keep_perceptual, uniform_random, fixed_strategy };

// Total strategy agreeing with bsr_action wherever it is defined; the
// fill policy only governs the undefined window.
struct BSRCompletion {
  BSRModel model;
  FillPolicy fill = FillPolicy::keep_perceptual;
  MixedStrategy fixed;  // used when fill == fixed_strategy

  std::vector<double> action(State s, int step) const;
};

}  // namespace deception
