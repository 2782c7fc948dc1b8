#include "deception/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace deception {

json game_to_json(const ConcurrentGame& game) {
  json j;
  j["states"] = game.state_names;
  j["actions1"] = game.actions1;
  j["actions2"] = game.actions2;
  j["initial"] = game.initial;
  j["discount"] = game.discount;
  json f1 = json::array(), f2 = json::array();
  for (State s = 0; s < game.num_states; ++s) {
    if (game.in_f1[s]) f1.push_back(s);
    if (game.in_f2[s]) f2.push_back(s);
  }
  j["targets1"] = f1;
  j["targets2"] = f2;
  json kernel = json::array();
  for (State s = 0; s < game.num_states; ++s) {
    for (int a = 0; a < game.num_a1(); ++a) {
      for (int b = 0; b < game.num_a2(); ++b) {
        const auto& row = game.row(s, a, b);
        if (!row) continue;
        json entry;
        entry["s"] = s;
        entry["a"] = a;
        entry["b"] = b;
        json next = json::array();
        for (const auto& [t, p] : row->entries) next.push_back({t, p});
        entry["next"] = next;
        kernel.push_back(entry);
      }
    }
  }
  j["kernel"] = kernel;
  return j;
}

ConcurrentGame game_from_json(const json& j) {
  ConcurrentGame g;
  g.state_names = j.at("states").get<std::vector<std::string>>();
  g.num_states = static_cast<int>(g.state_names.size());
  g.actions1 = j.at("actions1").get<std::vector<std::string>>();
  g.actions2 = j.at("actions2").get<std::vector<std::string>>();
  g.initial = j.at("initial").get<State>();
  g.discount = j.at("discount").get<double>();
  g.allocate();
  for (State s : j.at("targets1").get<std::vector<State>>()) g.in_f1[s] = 1;
  for (State s : j.at("targets2").get<std::vector<State>>()) g.in_f2[s] = 1;
  for (const auto& entry : j.at("kernel")) {
    Dist dist;
    for (const auto& pair : entry.at("next"))
      dist.entries.push_back({pair.at(0).get<State>(), pair.at(1).get<double>()});
    g.row(entry.at("s").get<State>(), entry.at("a").get<int>(),
          entry.at("b").get<int>()) = std::move(dist);
  }
  return g;
}

json grid_to_json(const GridConfig& cfg) {
  json j;
  j["rows"] = cfg.rows;
  j["cols"] = cfg.cols;
  json walls = json::array(), hidden = json::array();
  for (const Cell& c : cfg.walls) walls.push_back({c.row, c.col});
  for (const Cell& c : cfg.hidden_cells) hidden.push_back({c.row, c.col});
  j["walls"] = walls;
  j["hidden_cells"] = hidden;
  j["collision_ball_prob"] = cfg.collision_ball_prob;
  j["variant"] = cfg.variant == GridVariant::basic ? "basic" : "bouncing";
  return j;
}

GridConfig grid_from_json(const json& j) {
  GridConfig cfg;
  cfg.rows = j.at("rows").get<int>();
  cfg.cols = j.at("cols").get<int>();
  for (const auto& c : j.value("walls", json::array()))
    cfg.walls.insert({c.at(0).get<int>(), c.at(1).get<int>()});
  for (const auto& c : j.value("hidden_cells", json::array()))
    cfg.hidden_cells.insert({c.at(0).get<int>(), c.at(1).get<int>()});
  cfg.collision_ball_prob = j.value("collision_ball_prob", 0.5);
  std::string variant = j.value("variant", "basic");
  if (variant == "basic")
    cfg.variant = GridVariant::basic;
  else if (variant == "bouncing")
    cfg.variant = GridVariant::bouncing;
  else
    throw ConfigError("unknown grid variant: " + variant);
  return cfg;
}

LoadedGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open game file: " + path);
  json j = json::parse(in);
  LoadedGame lg;
  if (j.contains("grid")) {
    GridConfig cfg = grid_from_json(j.at("grid"));
    SoccerGame sg = build_soccer_game(cfg);
    lg.game = sg.game;
    lg.hidden_actions = {sg.hidden_action};
    lg.soccer = std::move(sg);
  } else {
    lg.game = game_from_json(j);
  }
  return lg;
}

void save_game_file(const std::string& path, const ConcurrentGame& game) {
  std::ofstream out(path);
  out << game_to_json(game).dump(2) << "\n";
}

void save_grid_file(const std::string& path, const GridConfig& cfg) {
  std::ofstream out(path);
  json j;
  j["grid"] = grid_to_json(cfg);
  out << j.dump(2) << "\n";
}

json strategy_to_json(const MixedStrategy& s) {
  json j;
  j["player"] = s.player;
  j["num_actions"] = s.num_actions;
  j["table"] = s.table;
  return j;
}

MixedStrategy strategy_from_json(const json& j) {
  MixedStrategy s;
  s.player = j.at("player").get<int>();
  s.num_actions = j.at("num_actions").get<int>();
  s.table = j.at("table").get<std::vector<double>>();
  return s;
}

json region_to_json(const RegionSet& r) {
  json j;
  j["player"] = r.player;
  j["game_tag"] = r.game_tag == GameTag::true_game ? "true_game" : "perceptual";
  j["members"] = r.members;
  return j;
}

RegionSet region_from_json(const json& j) {
  RegionSet r;
  r.player = j.at("player").get<int>();
  r.game_tag = j.at("game_tag").get<std::string>() == "true_game"
                   ? GameTag::true_game
                   : GameTag::perceptual;
  r.members = j.at("members").get<std::vector<uint8_t>>();
  return r;
}

json bundle_to_json(const HypergameBundle& hb) {
  json j;
  j["game"] = game_to_json(hb.game);
  j["game_hash"] = content_hash(j["game"]);
  j["visible"] = hb.visible;
  j["gamma"] = hb.gamma;
  j["asw1"] = region_to_json(hb.asw1);
  j["asw2"] = region_to_json(hb.asw2);
  j["asw1_p"] = region_to_json(hb.asw1_p);
  j["asw2_p"] = region_to_json(hb.asw2_p);
  j["pi1_asw"] = strategy_to_json(hb.pi1_asw);
  j["pi2_asw"] = strategy_to_json(hb.pi2_asw);
  j["pi1p_asw"] = strategy_to_json(hb.pi1p_asw);
  j["pi2p_asw"] = strategy_to_json(hb.pi2p_asw);
  j["pi1_ne"] = strategy_to_json(hb.pi1_ne);
  j["pi2_ne"] = strategy_to_json(hb.pi2_ne);
  j["pi1p_ne"] = strategy_to_json(hb.pi1p_ne);
  j["pi2p_ne"] = strategy_to_json(hb.pi2p_ne);
  j["pi1_true"] = strategy_to_json(hb.pi1_true);
  j["pi2_true"] = strategy_to_json(hb.pi2_true);
  j["pi1_perc"] = strategy_to_json(hb.pi1_perc);
  j["pi2_perc"] = strategy_to_json(hb.pi2_perc);
  j["values_true"] = hb.values_true;
  j["values_perc"] = hb.values_perc;
  j["u1"] = hb.u1.values;
  return j;
}

HypergameBundle bundle_from_json(const json& j) {
  HypergameBundle hb;
  hb.game = game_from_json(j.at("game"));
  hb.visible = j.at("visible").get<std::vector<int>>();
  hb.gamma = j.at("gamma").get<double>();
  hb.perceptual = derive_perceptual_game(hb.game, hb.visible);
  hb.asw1 = region_from_json(j.at("asw1"));
  hb.asw2 = region_from_json(j.at("asw2"));
  hb.asw1_p = region_from_json(j.at("asw1_p"));
  hb.asw2_p = region_from_json(j.at("asw2_p"));
  hb.pi1_asw = strategy_from_json(j.at("pi1_asw"));
  hb.pi2_asw = strategy_from_json(j.at("pi2_asw"));
  hb.pi1p_asw = strategy_from_json(j.at("pi1p_asw"));
  hb.pi2p_asw = strategy_from_json(j.at("pi2p_asw"));
  hb.pi1_ne = strategy_from_json(j.at("pi1_ne"));
  hb.pi2_ne = strategy_from_json(j.at("pi2_ne"));
  hb.pi1p_ne = strategy_from_json(j.at("pi1p_ne"));
  hb.pi2p_ne = strategy_from_json(j.at("pi2p_ne"));
  hb.pi1_true = strategy_from_json(j.at("pi1_true"));
  hb.pi2_true = strategy_from_json(j.at("pi2_true"));
  hb.pi1_perc = strategy_from_json(j.at("pi1_perc"));
  hb.pi2_perc = strategy_from_json(j.at("pi2_perc"));
  hb.values_true = j.at("values_true").get<std::vector<double>>();
  hb.values_perc = j.at("values_perc").get<std::vector<double>>();
  hb.u1.player = 1;
  hb.u1.profile_tag = "true-game NE";
  hb.u1.values = j.at("u1").get<std::vector<double>>();
  return hb;
}

json policy_to_json(const SwitchPolicy& policy, const SemiMDP& m, double bellman_tol) {
  json j;
  j["version"] = 1;
  j["delta"] = m.disc.delta;
  j["c_gamma"] = m.disc.c_gamma;
  j["gamma"] = m.gamma;
  j["tol"] = bellman_tol;
  j["scale"] = m.scale;
  j["strong_opponent"] = m.strong_opponent;
  j["macro"] = policy.macro;
  return j;
}

json semi_mdp_to_json(const SemiMDP& m) {
  json j;
  j["version"] = 1;
  j["num_game_states"] = m.num_game_states;
  j["delta"] = m.disc.delta;
  j["c_gamma"] = m.disc.c_gamma;
  j["gamma"] = m.gamma;
  j["scale"] = m.scale;
  json nature = json::array();
  for (const auto& ns : m.nature) {
    json e;
    e["s"] = ns.s;
    e["level"] = ns.level;
    e["flag"] = ns.flag;
    e["a"] = ns.a;
    e["b"] = ns.b;
    e["reward"] = ns.reward;
    e["to_sink"] = ns.to_sink;
    json next = json::array();
    for (const auto& [id, p] : ns.next) next.push_back({id, p});
    e["next"] = next;
    nature.push_back(e);
  }
  j["nature"] = nature;
  auto dump_acts = [](const std::vector<std::vector<std::pair<int, double>>>& acts) {
    json out = json::array();
    for (const auto& row : acts) {
      json r = json::array();
      for (const auto& [id, p] : row) r.push_back({id, p});
      out.push_back(r);
    }
    return out;
  };
  j["act_perc"] = dump_acts(m.act_perc);
  j["act_true"] = dump_acts(m.act_true);
  return j;
}

std::string content_hash(const json& j) {
  std::string dump = j.dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace deception
