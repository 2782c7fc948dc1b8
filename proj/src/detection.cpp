#include "deception/detection.hpp"

#include <algorithm>
#include <cmath>

namespace deception {

double HypothesisChain::prob(State s, int b, int a, State next) const {
  double sum = 0.0;
  for (const Entry& e : row(s, b)) {
    if (e.next != next) continue;
    if (mode == ObservationMode::states_and_p1_actions && e.a != a) continue;
    sum += e.p;
  }
  return sum;
}

namespace {

HypothesisChain marginalize(const ConcurrentGame& g, const MixedStrategy& pi1,
                            const std::vector<int>& actions, HypothesisLabel label,
                            ObservationMode mode) {
  HypothesisChain mc;
  mc.label = label;
  mc.mode = mode;
  mc.num_states = g.num_states;
  mc.num_b = g.num_a2();
  mc.initial = g.initial;
  mc.rows.resize(static_cast<size_t>(g.num_states) * g.num_a2());

  for (State s = 0; s < g.num_states; ++s) {
    auto pr = pi1.row(s);
    for (int b = 0; b < g.num_a2(); ++b) {
      auto& row = mc.rows[static_cast<size_t>(s) * mc.num_b + b];
      if (mode == ObservationMode::states_and_p1_actions) {
        for (int a : actions) {
          if (pr[a] <= 0.0) continue;
          for (const auto& [t, p] : g.row(s, a, b)->entries)
            row.push_back({a, t, pr[a] * p});
        }
      } else {
        std::vector<double> mass(g.num_states, 0.0);
        for (int a : actions) {
          if (pr[a] <= 0.0) continue;
          for (const auto& [t, p] : g.row(s, a, b)->entries) mass[t] += pr[a] * p;
        }
        for (State t = 0; t < g.num_states; ++t)
          if (mass[t] > 0.0) row.push_back({-1, t, mass[t]});
      }
    }
  }
  return mc;
}

}  // namespace

std::pair<HypothesisChain, HypothesisChain> build_hypotheses(
    const HypergameBundle& bundle, ObservationMode mode) {
  std::vector<int> all(bundle.game.num_a1());
  for (int a = 0; a < bundle.game.num_a1(); ++a) all[a] = a;
  // MC1 needs the true kernel: P2's "informed" hypothesis covers the
  // hidden actions the perceptual kernel leaves undefined.
  HypothesisChain mc0 = marginalize(bundle.game, bundle.pi1_perc, bundle.visible,
                                    HypothesisLabel::null_mc0, mode);
  HypothesisChain mc1 = marginalize(bundle.game, bundle.pi1_true, all,
                                    HypothesisLabel::alternative_mc1, mode);
  return {std::move(mc0), std::move(mc1)};
}

double log_likelihood_ratio(const HypothesisChain& mc0, const HypothesisChain& mc1,
                            const Observation& obs, ZeroProbPolicy policy,
                            double clamp_eps) {
  double p0 = mc0.prob(obs.s, obs.b, obs.a, obs.next);
  double p1 = mc1.prob(obs.s, obs.b, obs.a, obs.next);
  if (p0 <= 0.0 && p1 <= 0.0)
    throw GameError("observation impossible under both hypotheses");
  if (policy == ZeroProbPolicy::clamp) {
    p0 = std::max(p0, clamp_eps);
    p1 = std::max(p1, clamp_eps);
    return std::log(p1 / p0);
  }
  if (p0 <= 0.0) return std::numeric_limits<double>::infinity();
  if (p1 <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(p1 / p0);
}

double update_discrimination(double phi, double llr) {
  if (std::isinf(phi) && phi > 0.0) return phi;
  if (std::isinf(llr) && llr > 0.0) return llr;
  if (std::isinf(llr)) return 0.0;  // -inf evidence resets the statistic
  return std::max(phi + llr, 0.0);
}

double batch_discrimination(const HypothesisChain& mc0, const HypothesisChain& mc1,
                            const std::vector<Observation>& trace,
                            ZeroProbPolicy policy, double clamp_eps) {
  if (trace.empty()) throw GameError("batch_discrimination requires a nonempty trace");
  std::vector<double> llr(trace.size());
  for (size_t i = 0; i < trace.size(); ++i)
    llr[i] = log_likelihood_ratio(mc0, mc1, trace[i], policy, clamp_eps);

  double best = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < trace.size(); ++k) {
    double sum = 0.0;
    for (size_t i = k; i < trace.size(); ++i) {
      if (std::isinf(sum) && sum > 0.0) break;  // +inf saturates
      sum = (std::isinf(llr[i]) && llr[i] > 0.0) ? llr[i] : sum + llr[i];
    }
    best = std::max(best, sum);
  }
  return std::max(best, 0.0);
}

}  // namespace deception
