#pragma once

#include <utility>

#include "deception/game.hpp"
#include "deception/strategy.hpp"

namespace deception {

// Almost-sure winning region and a memoryless randomized witness
// strategy for the given player, via the nested fixpoint
//   ASW = nu Y. mu X. (F union Apre(Y, X)).
// A state enters X when some support set A' of the player's actions
// keeps, for every opponent action, all successors inside Y while at
// least one successor lands in X. The witness strategy mixes uniformly
// over that support.
//
// Support sets are enumerated exhaustively (2^|A|-1 per state); fine
// for the instances here where |A1| <= 5.
std::pair<RegionSet, MixedStrategy> compute_asw(const ConcurrentGame& game,
                                                int player,
                                                GameTag tag = GameTag::true_game);

// Lemma-2 style check: true iff asw_true is contained in asw_perceptual.
bool check_asw_containment(const RegionSet& asw_true, const RegionSet& asw_perceptual);

}  // namespace deception
