#include "deception/planner.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace deception {

PhiDiscretization::PhiDiscretization(double delta_, double c_gamma_)
    : delta(delta_), c_gamma(c_gamma_) {
  if (delta <= 0.0 || c_gamma <= 0.0)
    throw ConfigError("delta and c_gamma must be positive");
  double k = c_gamma / delta;
  n = static_cast<int>(std::lround(k));
  if (n < 1 || std::abs(k - n) > 1e-9)
    throw ConfigError("c_gamma must be an integral multiple of delta");
}

int PhiDiscretization::level_of(double phi) const {
  if (phi <= 0.0) return 1;
  double k = phi / delta;
  double j = std::round(k);
  // Snap FP-noisy boundary values; exact endpoints belong below.
  if (std::abs(k - j) < 1e-9) k = j;
  if (k > n) return level_exceed();
  int level = static_cast<int>(std::ceil(k));
  return std::clamp(level, 1, n);
}

double PhiDiscretization::midpoint(int level) const {
  if (level < 1 || level > n) throw ConfigError("midpoint of non-interval level");
  return (2 * level - 1) * delta / 2.0;
}

namespace {

SemiMDP build_impl(const HypergameBundle& bundle, const DetectorConfig& detector_cfg,
                   double delta, double reward_scale, bool strong) {
  detector_cfg.validate();
  const ConcurrentGame& g = bundle.game;

  SemiMDP m;
  m.num_game_states = g.num_states;
  m.disc = PhiDiscretization(delta, detector_cfg.threshold);
  m.gamma = bundle.gamma;
  m.scale = reward_scale;
  m.strong_opponent = strong;

  auto [mc0, mc1] = build_hypotheses(bundle, detector_cfg.mode);

  const int num_dec = m.num_decision_states();
  m.act_perc.resize(num_dec);
  m.act_true.resize(num_dec);

  std::unordered_map<int64_t, int> nature_index;
  auto nature_key = [&](State s, int level, int flag, int a, int b) {
    int64_t k = m.decision_id(s, level, flag);
    return (k * g.num_a1() + a) * g.num_a2() + b;
  };

  auto expand_nature = [&](State s, int level, int flag, int a, int b) {
    int64_t key = nature_key(s, level, flag, a, b);
    auto it = nature_index.find(key);
    if (it != nature_index.end()) return it->second;
    int idx = static_cast<int>(m.nature.size());
    nature_index.emplace(key, idx);
    SemiMDP::NatureState ns;
    ns.s = s;
    ns.level = level;
    ns.flag = static_cast<uint8_t>(flag);
    ns.a = a;
    ns.b = b;
    if (bundle.asw1.contains(s)) {
      ns.to_sink = true;
      ns.reward = reward_scale;
    } else if (bundle.asw2.contains(s)) {
      ns.to_sink = true;
      ns.reward = -reward_scale;
    } else if (level == m.disc.level_exceed() || (strong && flag == 1)) {
      ns.to_sink = true;
      ns.reward = bundle.u1.values[s] * reward_scale;
    } else {
      double phi_rep = flag == 1 ? m.disc.midpoint(level) : 0.0;
      for (const auto& [t, p] : g.row(s, a, b)->entries) {
        int next_level = level;
        if (flag == 1) {
          Observation obs{s, b, t, a};
          double llr = log_likelihood_ratio(mc0, mc1, obs, detector_cfg.zero_prob,
                                            detector_cfg.clamp_eps);
          double phi_next = update_discrimination(phi_rep, llr);
          next_level = std::isinf(phi_next) ? m.disc.level_exceed()
                                            : m.disc.level_of(phi_next);
          if (phi_next > detector_cfg.threshold + 1e-9)
            next_level = m.disc.level_exceed();
        }
        ns.next.push_back({m.decision_id(t, next_level, flag), p});
      }
    }
    m.nature.push_back(std::move(ns));
    return idx;
  };

  for (State s = 0; s < g.num_states; ++s) {
    auto perc1 = bundle.pi1_perc.row(s);
    auto true1 = bundle.pi1_true.row(s);
    auto perc2 = bundle.pi2_perc.row(s);
    for (int level = 1; level <= m.disc.num_levels(); ++level) {
      for (int flag = 0; flag <= 1; ++flag) {
        int id = m.decision_id(s, level, flag);
        for (int b = 0; b < g.num_a2(); ++b) {
          if (perc2[b] <= 0.0) continue;
          if (flag == 0) {
            for (int a = 0; a < g.num_a1(); ++a)
              if (perc1[a] > 0.0)
                m.act_perc[id].push_back(
                    {expand_nature(s, level, 0, a, b), perc1[a] * perc2[b]});
          }
          for (int a = 0; a < g.num_a1(); ++a)
            if (true1[a] > 0.0)
              m.act_true[id].push_back(
                  {expand_nature(s, level, 1, a, b), true1[a] * perc2[b]});
        }
      }
    }
  }
  return m;
}

double expect_dec(const std::vector<std::pair<int, double>>& row,
                  const std::vector<double>& v) {
  double acc = 0.0;
  for (const auto& [idx, p] : row) acc += p * v[idx];
  return acc;
}

}  // namespace

SemiMDP build_semi_mdp(const HypergameBundle& bundle, const DetectorConfig& detector_cfg,
                       double delta, double reward_scale) {
  return build_impl(bundle, detector_cfg, delta, reward_scale, false);
}

SemiMDP build_strong_opponent_mdp(const HypergameBundle& bundle,
                                  const DetectorConfig& detector_cfg, double delta,
                                  double reward_scale) {
  return build_impl(bundle, detector_cfg, delta, reward_scale, true);
}

SemiMDPSolution solve_semi_mdp(const SemiMDP& m, double bellman_tol, int max_iters) {
  const int num_dec = m.num_decision_states();
  SemiMDPSolution sol;
  sol.v_decision.assign(num_dec, 0.0);
  sol.v_nature.assign(m.nature.size(), 0.0);

  for (sol.iterations = 0; sol.iterations < max_iters; ++sol.iterations) {
    for (size_t i = 0; i < m.nature.size(); ++i) {
      const auto& ns = m.nature[i];
      sol.v_nature[i] =
          ns.reward + (ns.to_sink ? 0.0 : m.gamma * expect_dec(ns.next, sol.v_decision));
    }
    double residual = 0.0;
    for (int id = 0; id < num_dec; ++id) {
      double q_true = expect_dec(m.act_true[id], sol.v_nature);
      double v = q_true;
      if (!m.act_perc[id].empty())
        v = std::max(v, expect_dec(m.act_perc[id], sol.v_nature));
      residual = std::max(residual, std::abs(v - sol.v_decision[id]));
      sol.v_decision[id] = v;
    }
    sol.residual = residual;
    if (residual <= bellman_tol) break;
  }
  if (sol.residual > bellman_tol)
    throw NonConvergenceError("semi-MDP value iteration did not reach tolerance");

  sol.policy.macro.assign(num_dec, kMacroTrue);
  for (int id = 0; id < num_dec; ++id) {
    if (m.act_perc[id].empty()) continue;  // flag already set
    double q_perc = expect_dec(m.act_perc[id], sol.v_nature);
    double q_true = expect_dec(m.act_true[id], sol.v_nature);
    sol.policy.macro[id] = q_perc >= q_true ? kMacroPerceptual : kMacroTrue;
  }
  return sol;
}

std::vector<double> evaluate_switch_policy(const SemiMDP& m, const SwitchPolicy& policy,
                                           double tol, int max_iters) {
  if (policy.macro.size() != static_cast<size_t>(m.num_decision_states()))
    throw ConfigError("policy does not match the semi-MDP's decision states");
  std::vector<double> v_dec(m.num_decision_states(), 0.0);
  std::vector<double> v_nat(m.nature.size(), 0.0);
  double residual = 1.0;
  for (int it = 0; it < max_iters && residual > tol; ++it) {
    for (size_t i = 0; i < m.nature.size(); ++i) {
      const auto& ns = m.nature[i];
      v_nat[i] = ns.reward + (ns.to_sink ? 0.0 : m.gamma * expect_dec(ns.next, v_dec));
    }
    residual = 0.0;
    for (int id = 0; id < m.num_decision_states(); ++id) {
      const auto& row = (policy.macro[id] == kMacroPerceptual && !m.act_perc[id].empty())
                            ? m.act_perc[id]
                            : m.act_true[id];
      double v = expect_dec(row, v_nat);
      residual = std::max(residual, std::abs(v - v_dec[id]));
      v_dec[id] = v;
    }
  }
  if (residual > tol)
    throw NonConvergenceError("switch-policy evaluation did not converge");
  return v_dec;
}

double VodReport::vod_at(State s) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == s) return vod[i];
  throw GameError("state is inside an almost-sure winning region (VoD undefined)");
}

VodReport value_of_deception(const SemiMDPSolution& sol, const SemiMDP& m,
                             const HypergameBundle& bundle) {
  // The semi-MDP rewards +1 on reaching ASW1 and -1 on reaching ASW2,
  // so the comparable never-deceive baseline is P1's net equilibrium
  // payoff u1 - u2 under the true-game profile. Against that baseline
  // the switch-now macro guarantees VoD >= 0 (Theorem-1 sense): P1's
  // equilibrium strategy secures the zero-sum value against any fixed
  // opponent, and the detection payoff u1 >= u1 - u2.
  UtilityVector u2 = evaluate_profile(bundle.game, bundle.pi1_true, bundle.pi2_true, 2,
                                      bundle.asw2, bundle.gamma);
  VodReport report;
  report.scale = m.scale;
  for (State s = 0; s < m.num_game_states; ++s) {
    if (bundle.asw1.contains(s) || bundle.asw2.contains(s)) continue;
    double v = sol.v_decision[m.decision_id(s, 1, 0)];
    double base = (bundle.u1.values[s] - u2.values[s]) * m.scale;
    report.states.push_back(s);
    report.value.push_back(v);
    report.ne_payoff.push_back(base);
    report.vod.push_back(v - base);
  }
  return report;
}

}  // namespace deception
