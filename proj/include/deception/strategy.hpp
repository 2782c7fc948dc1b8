#pragma once

#include <span>
#include <string>
#include <vector>

#include "deception/game.hpp"

namespace deception {

// Memoryless mixed strategy: one distribution per state. An all-zero
// row means the strategy is undefined at that state.
struct MixedStrategy {
  int player = 1;
  int num_actions = 0;
  std::vector<double> table;  // num_states * num_actions

  static MixedStrategy zeros(int player, int num_states, int num_actions) {
    MixedStrategy ms;
    ms.player = player;
    ms.num_actions = num_actions;
    ms.table.assign(static_cast<size_t>(num_states) * num_actions, 0.0);
    return ms;
  }

  int num_states() const {
    return num_actions == 0 ? 0 : static_cast<int>(table.size()) / num_actions;
  }
  std::span<const double> row(State s) const {
    return {table.data() + static_cast<size_t>(s) * num_actions,
            static_cast<size_t>(num_actions)};
  }
  std::span<double> row(State s) {
    return {table.data() + static_cast<size_t>(s) * num_actions,
            static_cast<size_t>(num_actions)};
  }
  bool defined_at(State s) const {
    for (double p : row(s))
      if (p > 0.0) return true;
    return false;
  }
  void set_uniform(State s, std::span<const int> support) {
    auto r = row(s);
    for (double& p : r) p = 0.0;
    for (int a : support) r[a] = 1.0 / static_cast<double>(support.size());
  }
};

enum class GameTag { true_game, perceptual };

// Almost-sure winning region for one player in one game.
struct RegionSet {
  int player = 1;
  GameTag game_tag = GameTag::true_game;
  std::vector<uint8_t> members;

  bool contains(State s) const { return members[s] != 0; }
  int count() const {
    int n = 0;
    for (uint8_t m : members) n += m;
    return n;
  }
};

// Per-state discounted utility for one player under a fixed profile.
struct UtilityVector {
  int player = 1;
  std::string profile_tag;
  std::vector<double> values;
};

}  // namespace deception
