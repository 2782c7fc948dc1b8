#include "deception/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace deception {

uint64_t derive_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_row(std::span<const double> row, double u) {
  double acc = 0.0;
  int last = 0;
  for (int i = 0; i < static_cast<int>(row.size()); ++i) {
    if (row[i] <= 0.0) continue;
    acc += row[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

}  // namespace

namespace {

RolloutRecord rollout_impl(const HypergameBundle& bundle, const SemiMDP& mdp,
                           const SwitchPolicy& policy, const BSRCompletion& completion,
                           const DetectorConfig& detector_cfg,
                           const HypothesisChain& mc0, const HypothesisChain& mc1,
                           State s0, int horizon, uint64_t seed) {
  const ConcurrentGame& g = bundle.game;
  std::mt19937_64 rng(seed);
  RolloutRecord rec;
  State s = s0;
  double phi = 0.0;
  int flag = 0;
  double disc = 1.0;

  for (int step = 0; step <= horizon; ++step) {
    if (bundle.asw1.contains(s)) {
      rec.outcome = RolloutOutcome::reached_asw1;
      rec.payoff = disc * mdp.scale;
      break;
    }
    if (bundle.asw2.contains(s)) {
      rec.outcome = RolloutOutcome::reached_asw2;
      rec.payoff = -disc * mdp.scale;
      break;
    }
    if (flag == 1 && check_stop(phi, detector_cfg)) {
      rec.outcome = RolloutOutcome::detected;
      rec.detection_step = step;
      if (rec.switch_step < 0) ++rec.false_alarms;
      rec.payoff = disc * bundle.u1.values[s] * mdp.scale;
      break;
    }
    if (step == horizon) {
      rec.outcome = RolloutOutcome::horizon;
      rec.payoff = 0.0;
      break;
    }

    int level = std::isinf(phi) ? mdp.disc.level_exceed() : mdp.disc.level_of(phi);
    if (flag == 0 &&
        policy.macro[mdp.decision_id(s, level, 0)] == kMacroTrue) {
      flag = 1;
      rec.switch_step = step;
    }
    const MixedStrategy& p1 = flag ? bundle.pi1_true : bundle.pi1_perc;
    int a = sample_row(p1.row(s), next_uniform(rng));
    // P2 is pre-detection for the whole simulated portion, so the
    // completion's perceptual phase applies throughout.
    std::vector<double> p2_row = completion.action(s, 0);
    int b = sample_row(p2_row, next_uniform(rng));

    State next = sample_dist(*g.row(s, a, b), next_uniform(rng));
    if (flag == 1) {
      Observation obs{s, b, next, a};
      double llr = log_likelihood_ratio(mc0, mc1, obs, detector_cfg.zero_prob,
                                        detector_cfg.clamp_eps);
      phi = update_discrimination(phi, llr);
    }
    rec.play.steps.push_back({s, a, b});
    rec.phi_trace.push_back(phi);
    s = next;
    disc *= mdp.gamma;
  }
  rec.play.final_state = s;
  return rec;
}

}  // namespace

RolloutRecord rollout(const HypergameBundle& bundle, const SemiMDP& mdp,
                      const SwitchPolicy& policy, const BSRCompletion& completion,
                      const DetectorConfig& detector_cfg, State s0, int horizon,
                      uint64_t seed) {
  detector_cfg.validate();
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  auto [mc0, mc1] = build_hypotheses(bundle, detector_cfg.mode);
  return rollout_impl(bundle, mdp, policy, completion, detector_cfg, mc0, mc1, s0,
                      horizon, seed);
}

MonteCarloEstimate monte_carlo_payoff(const HypergameBundle& bundle, const SemiMDP& mdp,
                                      const SwitchPolicy& policy,
                                      const BSRCompletion& completion,
                                      const DetectorConfig& detector_cfg, State s0,
                                      int horizon, int n, uint64_t seed) {
  if (n < 30)
    throw ConfigError("monte_carlo_payoff needs n >= 30 for the normal interval");
  detector_cfg.validate();
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  auto [mc0, mc1] = build_hypotheses(bundle, detector_cfg.mode);
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    RolloutRecord rec = rollout_impl(bundle, mdp, policy, completion, detector_cfg,
                                     mc0, mc1, s0, horizon, derive_seed(seed, i));
    double d = rec.payoff - mean;
    mean += d / (i + 1);
    m2 += d * (rec.payoff - mean);
  }
  MonteCarloEstimate est;
  est.mean = mean;
  est.n = n;
  est.half_width = 1.96 * std::sqrt(m2 / (static_cast<double>(n) - 1) / n);
  return est;
}

HeatmapTable vod_heatmap(const SoccerGame& sg, const VodReport& report,
                         bool ball_with_p1) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> by_state(sg.game.num_states, nan);
  for (size_t i = 0; i < report.states.size(); ++i)
    by_state[report.states[i]] = report.vod[i];

  HeatmapTable table;
  table.num_cells = sg.num_cells();
  table.ball_with_p1 = ball_with_p1;
  table.vod.assign(static_cast<size_t>(table.num_cells) * table.num_cells, nan);
  table.min_vod = std::numeric_limits<double>::infinity();
  table.max_vod = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < table.num_cells; ++i) {
    for (int j = 0; j < table.num_cells; ++j) {
      State s = sg.encode({sg.cells[i], sg.cells[j], ball_with_p1});
      double v = by_state[s];
      table.vod[static_cast<size_t>(i) * table.num_cells + j] = v;
      if (!std::isnan(v)) {
        table.min_vod = std::min(table.min_vod, v);
        table.max_vod = std::max(table.max_vod, v);
      }
    }
  }
  return table;
}

std::string HeatmapTable::to_csv(const SoccerGame& sg) const {
  std::ostringstream os;
  os.precision(12);
  os << "p1_cell";
  for (int j = 0; j < num_cells; ++j)
    os << ",(" << sg.cells[j].row << ";" << sg.cells[j].col << ")";
  os << "\n";
  for (int i = 0; i < num_cells; ++i) {
    os << "(" << sg.cells[i].row << ";" << sg.cells[i].col << ")";
    for (int j = 0; j < num_cells; ++j) {
      double v = at(i, j);
      os << ",";
      if (std::isnan(v))
        os << "nan";
      else
        os << v;
    }
    os << "\n";
  }
  os << "# ball_with_p1=" << (ball_with_p1 ? 1 : 0) << " min=" << min_vod
     << " max=" << max_vod << "\n";
  return os.str();
}

std::vector<SensitivityRow> sensitivity_sweep(const HypergameBundle& bundle,
                                              const SemiMDP& reference_mdp,
                                              const SwitchPolicy& reference_policy,
                                              const DetectorConfig& detector_cfg,
                                              const std::vector<double>& thresholds,
                                              double eval_tol) {
  std::vector<double> v_ref =
      evaluate_switch_policy(reference_mdp, reference_policy, eval_tol);

  std::vector<SensitivityRow> rows;
  for (double cg : thresholds) {
    DetectorConfig cfg_i = detector_cfg;
    cfg_i.threshold = cg;
    SemiMDP m_i =
        build_semi_mdp(bundle, cfg_i, reference_mdp.disc.delta, reference_mdp.scale);

    // Match levels across discretizations through their midpoints.
    SwitchPolicy mapped;
    mapped.macro.assign(m_i.num_decision_states(), kMacroTrue);
    for (int id = 0; id < m_i.num_decision_states(); ++id) {
      if (m_i.flag_of_id(id) == 1) continue;
      int level_i = m_i.level_of_id(id);
      int ref_level;
      if (level_i == m_i.disc.level_exceed()) {
        ref_level = reference_mdp.disc.level_exceed();
      } else {
        double phi = m_i.disc.midpoint(level_i);
        ref_level = phi > reference_mdp.disc.c_gamma + 1e-9
                        ? reference_mdp.disc.level_exceed()
                        : reference_mdp.disc.level_of(phi);
      }
      mapped.macro[id] = reference_policy.macro[reference_mdp.decision_id(
          m_i.game_state_of(id), ref_level, 0)];
    }

    std::vector<double> v_i = evaluate_switch_policy(m_i, mapped, eval_tol);

    SensitivityRow row;
    row.c_gamma = cg;
    row.max_difference = -std::numeric_limits<double>::infinity();
    for (State s = 0; s < reference_mdp.num_game_states; ++s) {
      if (bundle.asw1.contains(s) || bundle.asw2.contains(s)) continue;
      double ref = v_ref[reference_mdp.decision_id(s, 1, 0)];
      double cur = v_i[m_i.decision_id(s, 1, 0)];
      if (ref - cur > row.max_difference) {
        row.max_difference = ref - cur;
        row.reference_value = ref;
        row.argmax_state = s;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

StrongOpponentReport strong_opponent_report(const HypergameBundle& bundle,
                                            const DetectorConfig& detector_cfg,
                                            double delta, double reward_scale,
                                            double bellman_tol) {
  SemiMDP realistic = build_semi_mdp(bundle, detector_cfg, delta, reward_scale);
  SemiMDP strong = build_strong_opponent_mdp(bundle, detector_cfg, delta, reward_scale);

  SemiMDPSolution sol_r = solve_semi_mdp(realistic, bellman_tol);
  SemiMDPSolution sol_s = solve_semi_mdp(strong, bellman_tol);

  // Both semi-MDPs share the decision-state indexing, so the strong
  // opponent's policy evaluates directly in the realistic model.
  // Evaluation is linear (no stage LPs), so run it tight: differences
  // below solver precision must come out as zero, not noise.
  double eval_tol = std::min(bellman_tol, 1e-7 * reward_scale);
  std::vector<double> v_strong_in_realistic =
      evaluate_switch_policy(realistic, sol_s.policy, eval_tol);
  std::vector<double> v_realistic =
      evaluate_switch_policy(realistic, sol_r.policy, eval_tol);

  StrongOpponentReport report;
  report.min_difference = std::numeric_limits<double>::infinity();
  report.max_difference = -std::numeric_limits<double>::infinity();
  for (State s = 0; s < realistic.num_game_states; ++s) {
    if (bundle.asw1.contains(s) || bundle.asw2.contains(s)) continue;
    int id = realistic.decision_id(s, 1, 0);
    double vr = v_realistic[id];
    double vs = v_strong_in_realistic[id];
    double diff = vr - vs;
    if (std::abs(diff) <= 1e-6 * reward_scale) diff = 0.0;
    report.states.push_back(s);
    report.realistic.push_back(vr);
    report.strong.push_back(vs);
    report.difference.push_back(diff);
    report.min_difference = std::min(report.min_difference, diff);
    report.max_difference = std::max(report.max_difference, diff);
  }
  return report;
}

}  // namespace deception
