#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "deception/perception.hpp"
#include "deception/planner.hpp"
#include "deception/soccer.hpp"

namespace deception {

using nlohmann::json;

json game_to_json(const ConcurrentGame& game);
ConcurrentGame game_from_json(const json& j);

json grid_to_json(const GridConfig& cfg);
GridConfig grid_from_json(const json& j);

// A game description file holds either an explicit game or a grid
// block; grid files also carry the soccer metadata and hidden actions.
struct LoadedGame {
  ConcurrentGame game;
  std::optional<SoccerGame> soccer;
  std::vector<int> hidden_actions;
};

LoadedGame load_game_file(const std::string& path);
void save_game_file(const std::string& path, const ConcurrentGame& game);
void save_grid_file(const std::string& path, const GridConfig& cfg);

json strategy_to_json(const MixedStrategy& s);
MixedStrategy strategy_from_json(const json& j);

json region_to_json(const RegionSet& r);
RegionSet region_from_json(const json& j);

json bundle_to_json(const HypergameBundle& hb);
HypergameBundle bundle_from_json(const json& j);

json policy_to_json(const SwitchPolicy& policy, const SemiMDP& m, double bellman_tol);

// Sparse triplet dump of the semi-MDP (versioned).
json semi_mdp_to_json(const SemiMDP& m);

// FNV-1a of the compact serialization; used by run manifests.
std::string content_hash(const json& j);

}  // namespace deception
