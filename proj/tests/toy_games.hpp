#pragma once

// Small hand-analyzed games shared between the unit and acceptance suites.

#include <random>

#include "deception/game.hpp"

namespace deception::testing {

inline void absorb_state(ConcurrentGame& g, State s) {
  for (int a = 0; a < g.num_a1(); ++a)
    for (int b = 0; b < g.num_a2(); ++b) g.row(s, a, b) = Dist{{{s, 1.0}}};
}

// Deception toy: P1's hidden action h wins from s1 outright but is a
// coin flip from s0. With only the visible action a, P2 wins almost
// surely from both transient states, so hiding h pays.
//   ASW1 = {s1, f1}, ASW2 = {f2},
//   ASW1^2 = {f1}, ASW2^2 = {s0, s1, f2}  (visible = {a}).
inline ConcurrentGame deception_toy_game() {
  ConcurrentGame g;
  g.num_states = 4;
  g.state_names = {"s0", "s1", "f1", "f2"};
  g.actions1 = {"a", "h"};
  g.actions2 = {"c", "d"};
  g.initial = 0;
  g.allocate();
  g.in_f1[2] = 1;
  g.in_f2[3] = 1;
  g.row(0, 0, 0) = Dist{{{1, 1.0}}};            // (s0,a,c) -> s1
  g.row(0, 0, 1) = Dist{{{0, 1.0}}};            // (s0,a,d) -> s0
  g.row(0, 1, 0) = Dist{{{2, 0.5}, {3, 0.5}}};  // (s0,h,*) -> coin flip
  g.row(0, 1, 1) = Dist{{{2, 0.5}, {3, 0.5}}};
  g.row(1, 0, 0) = Dist{{{3, 0.5}, {0, 0.5}}};  // (s1,a,c) risks f2
  g.row(1, 0, 1) = Dist{{{0, 1.0}}};
  g.row(1, 1, 0) = Dist{{{2, 1.0}}};            // (s1,h,*) -> f1
  g.row(1, 1, 1) = Dist{{{2, 1.0}}};
  absorb_state(g, 2);
  absorb_state(g, 3);
  return g;
}

inline std::vector<int> deception_toy_visible() { return {0}; }

// Same dynamics without P2's target. With everything visible the
// semi-MDP reward reduces to P1's Def.-3 utility, so the value of
// switching is exactly zero whatever the equilibrium tie-breaks are.
inline ConcurrentGame deception_toy_no_f2_game() {
  ConcurrentGame g = deception_toy_game();
  g.in_f2.assign(g.num_states, 0);
  return g;
}

// Random absorbing-target game for property tests. States 0 and 1 are
// the targets; every other row is a random distribution over 1-3
// successors.
inline ConcurrentGame random_game(std::mt19937_64& rng, int num_states = 6,
                                  int num_a1 = 3, int num_a2 = 2) {
  ConcurrentGame g;
  g.num_states = num_states;
  for (int s = 0; s < num_states; ++s) g.state_names.push_back("s" + std::to_string(s));
  for (int a = 0; a < num_a1; ++a) g.actions1.push_back("a" + std::to_string(a));
  for (int b = 0; b < num_a2; ++b) g.actions2.push_back("b" + std::to_string(b));
  g.initial = 2;
  g.allocate();
  g.in_f1[0] = 1;
  g.in_f2[1] = 1;
  absorb_state(g, 0);
  absorb_state(g, 1);
  std::uniform_int_distribution<int> succ_count(1, 3);
  std::uniform_int_distribution<State> pick(0, num_states - 1);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  for (State s = 2; s < num_states; ++s) {
    for (int a = 0; a < num_a1; ++a) {
      for (int b = 0; b < num_a2; ++b) {
        int k = succ_count(rng);
        std::vector<double> mass(num_states, 0.0);
        for (int i = 0; i < k; ++i) mass[pick(rng)] += weight(rng);
        double total = 0.0;
        for (double m : mass) total += m;
        Dist d;
        for (State t = 0; t < num_states; ++t)
          if (mass[t] > 0.0) d.entries.push_back({t, mass[t] / total});
        g.row(s, a, b) = std::move(d);
      }
    }
  }
  return g;
}

}  // namespace deception::testing
