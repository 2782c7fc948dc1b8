#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deception/types.hpp"

namespace deception {

// Two-player concurrent stochastic game with reachability targets.
// Both target sets are absorbing. Kernel rows may be undefined
// (perceptual games drop the rows of hidden P1 actions).
struct ConcurrentGame {
  int num_states = 0;
  std::vector<std::string> state_names;
  std::vector<std::string> actions1;
  std::vector<std::string> actions2;
  State initial = 0;
  double discount = 0.95;
  std::vector<uint8_t> in_f1;  // num_states
  std::vector<uint8_t> in_f2;
  // kernel[(s * |A1| + a) * |A2| + b]; nullopt = undefined transition
  std::vector<std::optional<Dist>> kernel;

  int num_a1() const { return static_cast<int>(actions1.size()); }
  int num_a2() const { return static_cast<int>(actions2.size()); }

  size_t kernel_index(State s, int a, int b) const {
    return (static_cast<size_t>(s) * actions1.size() + a) * actions2.size() + b;
  }
  const std::optional<Dist>& row(State s, int a, int b) const {
    return kernel[kernel_index(s, a, b)];
  }
  std::optional<Dist>& row(State s, int a, int b) {
    return kernel[kernel_index(s, a, b)];
  }

  // True iff action a of P1 has a defined row at s (checked against b=0;
  // rows are dropped per P1 action, never per joint action).
  bool a1_defined(State s, int a) const { return row(s, a, 0).has_value(); }

  bool is_target(State s) const { return in_f1[s] || in_f2[s]; }

  std::vector<int> available_a1(State s) const;

  void allocate() {
    in_f1.assign(num_states, 0);
    in_f2.assign(num_states, 0);
    kernel.assign(static_cast<size_t>(num_states) * actions1.size() * actions2.size(),
                  std::nullopt);
  }
};

// Alternating state/action sequence s0 (a0,b0) s1 (a1,b1) ... sn.
struct Play {
  struct Step {
    State state;
    int a1;
    int a2;
  };
  std::vector<Step> steps;
  State final_state = 0;

  size_t length() const { return steps.size(); }
  State state_at(size_t i) const {
    return i < steps.size() ? steps[i].state : final_state;
  }
};

// Validation never throws; each invariant violation becomes one line.
struct Diagnostics {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

Diagnostics validate_game(const ConcurrentGame& game);

// P(. | s, (a,b)). Throws UndefinedTransitionError on missing rows.
const Dist& successor_distribution(const ConcurrentGame& game, State s, int a, int b);

// Checks each consecutive transition has positive kernel probability.
bool play_consistent(const ConcurrentGame& game, const Play& play);

// Deterministic draw from successor_distribution given the seed.
State sample_transition(const ConcurrentGame& game, State s, int a, int b,
                        uint64_t rng_seed);

// Inverse-CDF categorical draw; u must be in [0,1).
State sample_dist(const Dist& dist, double u);

}  // namespace deception
