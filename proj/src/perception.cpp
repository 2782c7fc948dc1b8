#include "deception/perception.hpp"

#include <algorithm>

namespace deception {

ConcurrentGame derive_perceptual_game(const ConcurrentGame& game,
                                      const std::vector<int>& visible) {
  if (visible.empty()) throw ConfigError("visible action set must be nonempty");
  std::vector<uint8_t> keep(game.num_a1(), 0);
  for (int a : visible) {
    if (a < 0 || a >= game.num_a1()) throw ConfigError("visible action out of range");
    keep[a] = 1;
  }

  ConcurrentGame g2 = game;
  for (State s = 0; s < g2.num_states; ++s)
    for (int a = 0; a < g2.num_a1(); ++a)
      if (!keep[a])
        for (int b = 0; b < g2.num_a2(); ++b) g2.row(s, a, b).reset();

  for (State s = 0; s < g2.num_states; ++s)
    if (g2.available_a1(s).empty())
      throw GameError("state " + g2.state_names[s] +
                      " loses all P1 actions in the perceptual game");
  return g2;
}

namespace {

// ASW strategy inside the player's own region, NE strategy elsewhere
// (the NE table already holds uniform play inside the opponent region).
MixedStrategy composite(const MixedStrategy& ne, const MixedStrategy& asw,
                        const RegionSet& own_region) {
  MixedStrategy out = ne;
  for (State s = 0; s < static_cast<State>(own_region.members.size()); ++s)
    if (own_region.contains(s))
      std::copy(asw.row(s).begin(), asw.row(s).end(), out.row(s).begin());
  return out;
}

}  // namespace

HypergameBundle build_hypergame(const ConcurrentGame& game,
                                const std::vector<int>& visible, double gamma,
                                double tol) {
  HypergameBundle hb;
  hb.game = game;
  hb.perceptual = derive_perceptual_game(game, visible);
  hb.visible = visible;
  std::sort(hb.visible.begin(), hb.visible.end());
  hb.gamma = gamma;

  std::tie(hb.asw1, hb.pi1_asw) = compute_asw(hb.game, 1, GameTag::true_game);
  std::tie(hb.asw2, hb.pi2_asw) = compute_asw(hb.game, 2, GameTag::true_game);
  std::tie(hb.asw1_p, hb.pi1p_asw) = compute_asw(hb.perceptual, 1, GameTag::perceptual);
  std::tie(hb.asw2_p, hb.pi2p_asw) = compute_asw(hb.perceptual, 2, GameTag::perceptual);

  if (!check_asw_containment(hb.asw2, hb.asw2_p))
    throw GameError("internal error: ASW2 not contained in perceptual ASW2");

  ZeroSumSolution zs = solve_zero_sum(hb.game, hb.asw1, hb.asw2, gamma, tol);
  ZeroSumSolution zs2 = solve_zero_sum(hb.perceptual, hb.asw1_p, hb.asw2_p, gamma, tol);
  hb.values_true = zs.values;
  hb.values_perc = zs2.values;
  hb.pi1_ne = zs.pi1;
  hb.pi2_ne = zs.pi2;
  hb.pi1p_ne = zs2.pi1;
  hb.pi2p_ne = zs2.pi2;

  hb.pi1_true = composite(hb.pi1_ne, hb.pi1_asw, hb.asw1);
  hb.pi2_true = composite(hb.pi2_ne, hb.pi2_asw, hb.asw2);
  hb.pi1_perc = composite(hb.pi1p_ne, hb.pi1p_asw, hb.asw1_p);
  hb.pi2_perc = composite(hb.pi2p_ne, hb.pi2p_asw, hb.asw2_p);

  hb.u1 = evaluate_profile(hb.game, hb.pi1_true, hb.pi2_true, 1, hb.asw1, gamma);
  hb.u1.profile_tag = "true-game NE";
  return hb;
}

std::optional<std::vector<double>> bsr_action(const BSRModel& model, State s, int step) {
  const HypergameBundle& hb = *model.bundle;
  switch (model.phase(step)) {
    case Phase::perceptual: {
      auto r = hb.pi2_perc.row(s);
      return std::vector<double>(r.begin(), r.end());
    }
    case Phase::undefined_window:
      return std::nullopt;
    case Phase::true_game: {
      auto r = hb.pi2_true.row(s);
      return std::vector<double>(r.begin(), r.end());
    }
  }
  return std::nullopt;
}

std::vector<double> BSRCompletion::action(State s, int step) const {
  if (auto dist = bsr_action(model, s, step)) return *dist;
  const HypergameBundle& hb = *model.bundle;
  switch (fill) {
    case FillPolicy::keep_perceptual: {
      auto r = hb.pi2_perc.row(s);
      return std::vector<double>(r.begin(), r.end());
    }
    case FillPolicy::uniform_random:
      return std::vector<double>(hb.game.num_a2(),
                                 1.0 / static_cast<double>(hb.game.num_a2()));
    case FillPolicy::fixed_strategy: {
      auto r = fixed.row(s);
      return std::vector<double>(r.begin(), r.end());
    }
  }
  throw ConfigError("unknown fill policy");
}

}  // namespace deception
