// Command-line front end: equilibrium/ASW solving, semi-MDP planning,
// heatmaps, sensitivity sweeps and Monte Carlo simulation for
// deceptive switching in concurrent stochastic reachability games.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deception/harness.hpp"
#include "deception/json_io.hpp"

namespace fs = std::filesystem;
using namespace deception;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string game_file;
  std::string visible_spec;  // comma-separated action names, or "auto"
  double gamma = 0.95;
  double delta = 0.2;
  double c_gamma = 2.0;
  double scale = 1.0;
  double tol = 1e-3;
  uint64_t seed = 1;
  int rollouts = 1000;
  int horizon = 200;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--game", o.game_file, "Game description file (JSON)")->required();
  cmd->add_option("--visible", o.visible_spec,
                  "P1 actions known to P2 (names, comma-separated; default: all "
                  "non-hidden actions of a grid game)");
  cmd->add_option("--gamma", o.gamma, "Discount factor");
  cmd->add_option("--delta", o.delta, "Discrimination level width");
  cmd->add_option("--cgamma", o.c_gamma, "Detection threshold");
  cmd->add_option("--scale", o.scale, "Reward scale (1 or 100)");
  cmd->add_option("--tol", o.tol, "Bellman tolerance (on the chosen scale)");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--rollouts", o.rollouts, "Monte Carlo rollouts");
  cmd->add_option("--horizon", o.horizon, "Rollout horizon");
  cmd->add_option("--out", o.out_dir, "Output directory");
}

std::vector<int> resolve_visible(const LoadedGame& lg, const std::string& spec) {
  const auto& names = lg.game.actions1;
  if (spec.empty() || spec == "auto") {
    if (lg.hidden_actions.empty())
      throw ConfigError("--visible required for games without a hidden-action set");
    std::vector<int> vis;
    for (int a = 0; a < lg.game.num_a1(); ++a) {
      bool hidden = false;
      for (int h : lg.hidden_actions) hidden = hidden || h == a;
      if (!hidden) vis.push_back(a);
    }
    return vis;
  }
  std::vector<int> vis;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw ConfigError("unknown P1 action: " + tok);
    vis.push_back(static_cast<int>(it - names.begin()));
  }
  return vis;
}

void write_manifest(const CommonOpts& o, const std::string& command,
                    const LoadedGame& lg) {
  json m;
  m["command"] = command;
  m["game_file"] = o.game_file;
  m["game_hash"] = content_hash(game_to_json(lg.game));
  m["visible"] = o.visible_spec.empty() ? "auto" : o.visible_spec;
  m["gamma"] = o.gamma;
  m["delta"] = o.delta;
  m["cgamma"] = o.c_gamma;
  m["scale"] = o.scale;
  m["tol"] = o.tol;
  m["seed"] = o.seed;
  m["rollouts"] = o.rollouts;
  m["horizon"] = o.horizon;
  std::ofstream(fs::path(o.out_dir) / "manifest.json") << m.dump(2) << "\n";
}

struct Prepared {
  LoadedGame lg;
  HypergameBundle bundle;
  DetectorConfig detector;
};

Prepared prepare(const CommonOpts& o, const std::string& command) {
  fs::create_directories(o.out_dir);
  Prepared p;
  p.lg = load_game_file(o.game_file);
  std::vector<int> visible = resolve_visible(p.lg, o.visible_spec);
  p.bundle = build_hypergame(p.lg.game, visible, o.gamma, std::min(o.tol, 1e-3));
  p.detector.threshold = o.c_gamma;
  write_manifest(o, command, p.lg);
  return p;
}

void cmd_solve_asw(const CommonOpts& o) {
  fs::create_directories(o.out_dir);
  LoadedGame lg = load_game_file(o.game_file);
  auto [asw1, pi1] = compute_asw(lg.game, 1);
  auto [asw2, pi2] = compute_asw(lg.game, 2);
  json j;
  j["asw1"] = region_to_json(asw1);
  j["asw2"] = region_to_json(asw2);
  j["pi1_asw"] = strategy_to_json(pi1);
  j["pi2_asw"] = strategy_to_json(pi2);
  if (!o.visible_spec.empty()) {
    ConcurrentGame g2 = derive_perceptual_game(lg.game, resolve_visible(lg, o.visible_spec));
    auto [asw1p, pi1p] = compute_asw(g2, 1, GameTag::perceptual);
    auto [asw2p, pi2p] = compute_asw(g2, 2, GameTag::perceptual);
    j["asw1_perceptual"] = region_to_json(asw1p);
    j["asw2_perceptual"] = region_to_json(asw2p);
    j["pi1_asw_perceptual"] = strategy_to_json(pi1p);
    j["pi2_asw_perceptual"] = strategy_to_json(pi2p);
  }
  std::ofstream(fs::path(o.out_dir) / "asw.json") << j.dump(2) << "\n";
  write_manifest(o, "solve-asw", lg);
  std::cout << "ASW1: " << asw1.count() << " states, ASW2: " << asw2.count()
            << " states\n";
}

void cmd_solve_ne(const CommonOpts& o) {
  Prepared p = prepare(o, "solve-ne");
  std::ofstream(fs::path(o.out_dir) / "bundle.json")
      << bundle_to_json(p.bundle).dump() << "\n";
  std::cout << "bundle written; ASW2 " << p.bundle.asw2.count() << " <= ASW2^2 "
            << p.bundle.asw2_p.count() << " states\n";
}

void cmd_build_semimdp(const CommonOpts& o) {
  Prepared p = prepare(o, "build-semimdp");
  SemiMDP m = build_semi_mdp(p.bundle, p.detector, o.delta, o.scale);
  std::ofstream(fs::path(o.out_dir) / "semimdp.json") << semi_mdp_to_json(m).dump()
                                                      << "\n";
  std::cout << m.num_decision_states() << " decision states, " << m.nature.size()
            << " nature states\n";
}

void cmd_plan(const CommonOpts& o) {
  Prepared p = prepare(o, "plan");
  SemiMDP m = build_semi_mdp(p.bundle, p.detector, o.delta, o.scale);
  SemiMDPSolution sol = solve_semi_mdp(m, o.tol);
  VodReport report = value_of_deception(sol, m, p.bundle);

  std::ofstream(fs::path(o.out_dir) / "policy.json")
      << policy_to_json(sol.policy, m, o.tol).dump() << "\n";
  std::ofstream vod(fs::path(o.out_dir) / "vod.csv");
  vod.precision(12);
  vod << "state,name,value,ne_payoff,vod\n";
  double best = 0.0;
  for (size_t i = 0; i < report.states.size(); ++i) {
    vod << report.states[i] << "," << p.bundle.game.state_names[report.states[i]]
        << "," << report.value[i] << "," << report.ne_payoff[i] << "," << report.vod[i]
        << "\n";
    best = std::max(best, report.vod[i]);
  }
  std::cout << "solved in " << sol.iterations + 1 << " sweeps, max VoD " << best
            << " (scale " << o.scale << ")\n";
}

void cmd_evaluate(const CommonOpts& o, const std::string& policy_file) {
  Prepared p = prepare(o, "evaluate");
  std::ifstream in(policy_file);
  if (!in) throw ConfigError("cannot open policy file: " + policy_file);
  json pj = json::parse(in);
  SwitchPolicy policy;
  policy.macro = pj.at("macro").get<std::vector<uint8_t>>();
  double scale = pj.at("scale").get<double>();

  SemiMDP m = build_semi_mdp(p.bundle, p.detector, o.delta, scale);
  std::vector<double> v = evaluate_switch_policy(m, policy, o.tol);
  std::ofstream out(fs::path(o.out_dir) / "values.csv");
  out.precision(12);
  out << "state,name,value\n";
  for (State s = 0; s < m.num_game_states; ++s) {
    if (p.bundle.asw1.contains(s) || p.bundle.asw2.contains(s)) continue;
    out << s << "," << p.bundle.game.state_names[s] << ","
        << v[m.decision_id(s, 1, 0)] << "\n";
  }
  std::cout << "policy evaluated at threshold " << o.c_gamma << "\n";
}

void cmd_heatmap(const CommonOpts& o) {
  Prepared p = prepare(o, "heatmap");
  if (!p.lg.soccer) throw ConfigError("heatmap requires a grid game");
  SemiMDP m = build_semi_mdp(p.bundle, p.detector, o.delta, o.scale);
  SemiMDPSolution sol = solve_semi_mdp(m, o.tol);
  VodReport report = value_of_deception(sol, m, p.bundle);
  for (bool ball : {false, true}) {
    HeatmapTable t = vod_heatmap(*p.lg.soccer, report, ball);
    std::string name = ball ? "vod_ball_p1.csv" : "vod_ball_p2.csv";
    std::ofstream(fs::path(o.out_dir) / name) << t.to_csv(*p.lg.soccer);
    std::cout << name << ": min " << t.min_vod << " max " << t.max_vod << "\n";
  }
}

void cmd_sensitivity(const CommonOpts& o, std::vector<double>& thresholds) {
  Prepared p = prepare(o, "sensitivity");
  SemiMDP m = build_semi_mdp(p.bundle, p.detector, o.delta, o.scale);
  SemiMDPSolution sol = solve_semi_mdp(m, o.tol);
  auto rows =
      sensitivity_sweep(p.bundle, m, sol.policy, p.detector, thresholds, o.tol);
  std::ofstream out(fs::path(o.out_dir) / "sensitivity.csv");
  out.precision(12);
  out << "c_gamma,max_difference,reference_value,argmax_state\n";
  for (const auto& r : rows) {
    out << r.c_gamma << "," << r.max_difference << "," << r.reference_value << ","
        << r.argmax_state << "\n";
    std::cout << "c_gamma=" << r.c_gamma << " max diff " << r.max_difference
              << " (reference " << r.reference_value << ")\n";
  }
}

void cmd_strong_opponent(const CommonOpts& o) {
  Prepared p = prepare(o, "strong-opponent");
  StrongOpponentReport rep =
      strong_opponent_report(p.bundle, p.detector, o.delta, o.scale, o.tol);
  std::ofstream out(fs::path(o.out_dir) / "strong_opponent.csv");
  out.precision(12);
  out << "state,name,realistic,strong,difference\n";
  for (size_t i = 0; i < rep.states.size(); ++i)
    out << rep.states[i] << "," << p.bundle.game.state_names[rep.states[i]] << ","
        << rep.realistic[i] << "," << rep.strong[i] << "," << rep.difference[i]
        << "\n";
  std::cout << "difference min " << rep.min_difference << " max "
            << rep.max_difference << "\n";
}

void cmd_simulate(const CommonOpts& o, const std::string& completion_name, int k2,
                  int64_t start_state) {
  Prepared p = prepare(o, "simulate");
  SemiMDP m = build_semi_mdp(p.bundle, p.detector, o.delta, o.scale);
  SemiMDPSolution sol = solve_semi_mdp(m, o.tol);

  BSRCompletion completion;
  completion.model.bundle = &p.bundle;
  completion.model.timeline = {0, 0, k2};
  if (completion_name == "keep_perceptual")
    completion.fill = FillPolicy::keep_perceptual;
  else if (completion_name == "uniform")
    completion.fill = FillPolicy::uniform_random;
  else if (completion_name == "fixed") {
    completion.fill = FillPolicy::fixed_strategy;
    completion.fixed = p.bundle.pi2_true;
  } else {
    throw ConfigError("unknown completion: " + completion_name);
  }

  State s0 = start_state < 0 ? p.bundle.game.initial : static_cast<State>(start_state);
  MonteCarloEstimate est = monte_carlo_payoff(p.bundle, m, sol.policy, completion,
                                              p.detector, s0, o.horizon, o.rollouts,
                                              o.seed);
  double v = sol.v_decision[m.decision_id(s0, 1, 0)];
  std::cout << "mean payoff " << est.mean << " +- " << est.half_width
            << " (planner value " << v << ")\n";

  // Detector trace of the first rollout, for replay/debugging.
  RolloutRecord rec = rollout(p.bundle, m, sol.policy, completion, p.detector, s0,
                              o.horizon, derive_seed(o.seed, 0));
  std::ofstream out(fs::path(o.out_dir) / "trace.csv");
  out.precision(12);
  out << "step,s,b,s_next,a,llr,phi,detected\n";
  auto [mc0, mc1] = build_hypotheses(p.bundle, p.detector.mode);
  double phi = 0.0;
  for (size_t i = 0; i < rec.play.steps.size(); ++i) {
    const auto& st = rec.play.steps[i];
    State next = rec.play.state_at(i + 1);
    bool folding = rec.switch_step >= 0 && static_cast<int>(i) >= rec.switch_step;
    double llr = folding ? log_likelihood_ratio(mc0, mc1, {st.state, st.a2, next, st.a1},
                                                p.detector.zero_prob,
                                                p.detector.clamp_eps)
                         : 0.0;
    phi = rec.phi_trace[i];
    out << i << "," << st.state << "," << st.a2 << "," << next << "," << st.a1 << ","
        << llr << "," << phi << ","
        << (rec.detection_step >= 0 && static_cast<int>(i) + 1 >= rec.detection_step)
        << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deceptive switching planner for concurrent stochastic games"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string policy_file, completion_name = "keep_perceptual";
  std::vector<double> thresholds = {1.0, 5.0, 8.0, 12.0};
  int k2 = 0;
  int64_t start_state = -1;

  add_common(app.add_subcommand("solve-asw", "Almost-sure winning regions"), o);
  add_common(app.add_subcommand("solve-ne", "Hypergame bundle with NE strategies"), o);
  add_common(app.add_subcommand("build-semimdp", "Materialize the switching semi-MDP"),
             o);
  add_common(app.add_subcommand("plan", "Solve for the optimal switching policy"), o);
  auto* eval = app.add_subcommand("evaluate", "Evaluate a policy file");
  add_common(eval, o);
  eval->add_option("--policy", policy_file, "Policy JSON")->required();
  add_common(app.add_subcommand("heatmap", "Per-position VoD tables"), o);
  auto* sens = app.add_subcommand("sensitivity", "Threshold sensitivity sweep");
  add_common(sens, o);
  sens->add_option("--thresholds", thresholds, "Detection thresholds");
  add_common(app.add_subcommand("strong-opponent", "Zero-delay opponent comparison"),
             o);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo rollouts");
  add_common(sim, o);
  sim->add_option("--completion", completion_name,
                  "keep_perceptual | uniform | fixed");
  sim->add_option("--k2", k2, "Learning delay after detection");
  sim->add_option("--state", start_state, "Initial state (default: game initial)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("solve-asw")) cmd_solve_asw(o);
    else if (app.got_subcommand("solve-ne")) cmd_solve_ne(o);
    else if (app.got_subcommand("build-semimdp")) cmd_build_semimdp(o);
    else if (app.got_subcommand("plan")) cmd_plan(o);
    else if (app.got_subcommand("evaluate")) cmd_evaluate(o, policy_file);
    else if (app.got_subcommand("heatmap")) cmd_heatmap(o);
    else if (app.got_subcommand("sensitivity")) cmd_sensitivity(o, thresholds);
    else if (app.got_subcommand("strong-opponent")) cmd_strong_opponent(o);
    else if (app.got_subcommand("simulate")) cmd_simulate(o, completion_name, k2, start_state);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
