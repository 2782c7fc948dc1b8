#include "deception/asw.hpp"

#include <algorithm>

namespace deception {

namespace {

struct PlayerView {
  const ConcurrentGame& g;
  int player;

  std::vector<int> own_actions(State s) const {
    if (player == 1) return g.available_a1(s);
    std::vector<int> out(g.num_a2());
    for (int b = 0; b < g.num_a2(); ++b) out[b] = b;
    return out;
  }
  std::vector<int> opp_actions(State s) const {
    if (player == 1) {
      std::vector<int> out(g.num_a2());
      for (int b = 0; b < g.num_a2(); ++b) out[b] = b;
      return out;
    }
    return g.available_a1(s);
  }
  const Dist& successors(State s, int own, int opp) const {
    return player == 1 ? *g.row(s, own, opp) : *g.row(s, opp, own);
  }
  const std::vector<uint8_t>& targets() const { return player == 1 ? g.in_f1 : g.in_f2; }
  int num_own_actions() const { return player == 1 ? g.num_a1() : g.num_a2(); }
};

// Smallest witnessing support (by subset bitmask order), or 0 if none.
uint32_t apre_witness(const PlayerView& view, State s, const std::vector<uint8_t>& y,
                      const std::vector<uint8_t>& x) {
  std::vector<int> own = view.own_actions(s);
  std::vector<int> opp = view.opp_actions(s);
  if (own.empty()) return 0;
  uint32_t full = (1u << own.size()) - 1;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    bool ok = true;
    for (int o : opp) {
      bool hits_x = false;
      for (size_t k = 0; k < own.size() && ok; ++k) {
        if (!(mask & (1u << k))) continue;
        for (const auto& [t, p] : view.successors(s, own[k], o).entries) {
          if (p <= 0.0) continue;
          if (!y[t]) { ok = false; break; }
          if (x[t]) hits_x = true;
        }
      }
      if (!ok || !hits_x) { ok = false; break; }
    }
    if (ok) return mask;
  }
  return 0;
}

}  // namespace

std::pair<RegionSet, MixedStrategy> compute_asw(const ConcurrentGame& game, int player,
                                                GameTag tag) {
  PlayerView view{game, player};
  const auto& targets = view.targets();

  std::vector<uint8_t> y(game.num_states, 1);
  std::vector<uint8_t> x(game.num_states, 0);
  std::vector<uint32_t> witness(game.num_states, 0);

  while (true) {
    for (State s = 0; s < game.num_states; ++s) x[s] = (y[s] && targets[s]) ? 1 : 0;
    std::fill(witness.begin(), witness.end(), 0u);
    bool grew = true;
    while (grew) {
      grew = false;
      for (State s = 0; s < game.num_states; ++s) {
        if (!y[s] || x[s]) continue;
        uint32_t w = apre_witness(view, s, y, x);
        if (w) {
          x[s] = 1;
          witness[s] = w;
          grew = true;
        }
      }
    }
    if (x == y) break;
    y = x;
  }

  RegionSet region;
  region.player = player;
  region.game_tag = tag;
  region.members = y;

  MixedStrategy strat =
      MixedStrategy::zeros(player, game.num_states, view.num_own_actions());
  for (State s = 0; s < game.num_states; ++s) {
    if (!region.contains(s)) continue;
    std::vector<int> own = view.own_actions(s);
    if (own.empty()) continue;
    std::vector<int> support;
    if (targets[s] || witness[s] == 0) {
      support = own;  // inside the target set any action keeps us there
    } else {
      for (size_t k = 0; k < own.size(); ++k)
        if (witness[s] & (1u << k)) support.push_back(own[k]);
    }
    strat.set_uniform(s, support);
  }
  return {std::move(region), std::move(strat)};
}

bool check_asw_containment(const RegionSet& asw_true, const RegionSet& asw_perceptual) {
  if (asw_true.members.size() != asw_perceptual.members.size())
    throw GameError("region state spaces differ");
  for (size_t s = 0; s < asw_true.members.size(); ++s)
    if (asw_true.members[s] && !asw_perceptual.members[s]) return false;
  return true;
}

}  // namespace deception
