#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "deception/detection.hpp"
#include "toy_games.hpp"

using namespace deception;
using namespace deception::testing;

namespace {

// Two-state chains over a single P2 action, built by hand.
HypothesisChain hand_chain(double p_advance, HypothesisLabel label) {
  HypothesisChain mc;
  mc.label = label;
  mc.num_states = 2;
  mc.num_b = 1;
  mc.rows.resize(2);
  if (p_advance > 0.0) mc.rows[0].push_back({-1, 1, p_advance});
  if (p_advance < 1.0) mc.rows[0].push_back({-1, 0, 1.0 - p_advance});
  mc.rows[1].push_back({-1, 1, 1.0});
  return mc;
}

std::vector<Observation> simulate_trace(const HypergameBundle& hb, int len,
                                        std::mt19937_64& rng) {
  std::vector<Observation> trace;
  State s = hb.game.initial;
  std::uniform_int_distribution<int> pick_b(0, hb.game.num_a2() - 1);
  for (int i = 0; i < len; ++i) {
    auto r1 = hb.pi1_true.row(s);
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    int a = 0;
    double acc = 0.0;
    for (int k = 0; k < hb.game.num_a1(); ++k) {
      acc += r1[k];
      if (u < acc) {
        a = k;
        break;
      }
      a = k;
    }
    int b = pick_b(rng);
    double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    State next = sample_dist(*hb.game.row(s, a, b), u2);
    trace.push_back({s, b, next, a});
    s = next;
    if (hb.game.is_target(s)) break;
  }
  return trace;
}

}  // namespace

TEST_CASE("log-likelihood ratio of hand-built chains") {
  HypothesisChain mc0 = hand_chain(0.25, HypothesisLabel::null_mc0);
  HypothesisChain mc1 = hand_chain(1.0, HypothesisLabel::alternative_mc1);
  Observation advance{0, 0, 1, -1};
  CHECK(log_likelihood_ratio(mc0, mc1, advance) == doctest::Approx(std::log(4.0)));

  // Staying is impossible under MC1.
  Observation stay{0, 0, 0, -1};
  CHECK(log_likelihood_ratio(mc0, mc1, stay) ==
        -std::numeric_limits<double>::infinity());
  CHECK(log_likelihood_ratio(mc1, mc0, stay) ==
        std::numeric_limits<double>::infinity());
  CHECK(log_likelihood_ratio(mc0, mc1, stay, ZeroProbPolicy::clamp, 1e-6) ==
        doctest::Approx(std::log(1e-6 / 0.75)));

  Observation impossible{1, 0, 0, -1};
  CHECK_THROWS_AS(log_likelihood_ratio(mc0, mc1, impossible), GameError);
}

TEST_CASE("CUSUM update recursion") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(update_discrimination(0.5, 0.3) == doctest::Approx(0.8));
  CHECK(update_discrimination(0.5, -1.0) == 0.0);
  CHECK(update_discrimination(0.0, -0.1) == 0.0);
  CHECK(update_discrimination(1.0, inf) == inf);
  CHECK(update_discrimination(inf, -5.0) == inf);  // +inf is sticky
  CHECK(update_discrimination(1.0, -inf) == 0.0);
}

TEST_CASE("batch discrimination equals the max clamped suffix sum") {
  // Chains whose llr is +1 for 'advance' and negative for 'stay': a
  // single dip at the front is discarded by the max over change points.
  HypothesisChain a0 = hand_chain(0.2, HypothesisLabel::null_mc0);
  HypothesisChain a1 = hand_chain(0.2 * std::exp(1.0), HypothesisLabel::alternative_mc1);
  Observation advance{0, 0, 1, -1};
  Observation stay{0, 0, 0, -1};
  double l_adv = log_likelihood_ratio(a0, a1, advance);
  double l_stay = log_likelihood_ratio(a0, a1, stay);
  CHECK(l_adv == doctest::Approx(1.0));

  std::vector<Observation> trace;
  // Pick counts so the sums match {-2, 3, 1} up to the actual l_stay.
  trace = {stay, advance, advance, advance, advance};
  double batch = batch_discrimination(a0, a1, trace);
  double inc = 0.0;
  for (const Observation& o : trace)
    inc = update_discrimination(inc, log_likelihood_ratio(a0, a1, o));
  CHECK(batch == doctest::Approx(inc).epsilon(1e-12));
  CHECK(batch == doctest::Approx(4.0 * l_adv));  // reset after the dip
  CHECK(l_stay < 0.0);

  CHECK_THROWS_AS(batch_discrimination(a0, a1, {}), GameError);
}

TEST_CASE("incremental and batch statistics agree on simulated traces") {
  HypergameBundle hb =
      build_hypergame(deception_toy_game(), deception_toy_visible(), 0.95);
  std::mt19937_64 rng(31337);
  for (ObservationMode mode :
       {ObservationMode::states_only, ObservationMode::states_and_p1_actions}) {
    auto [mc0, mc1] = build_hypotheses(hb, mode);
    for (ZeroProbPolicy policy :
         {ZeroProbPolicy::immediate_detect, ZeroProbPolicy::clamp}) {
      for (int trial = 0; trial < 250; ++trial) {
        std::vector<Observation> trace = simulate_trace(hb, 1 + trial % 30, rng);
        if (trace.empty()) continue;
        double inc = 0.0;
        for (const Observation& o : trace)
          inc = update_discrimination(
              inc, log_likelihood_ratio(mc0, mc1, o, policy, 1e-6));
        double batch = batch_discrimination(mc0, mc1, trace, policy, 1e-6);
        if (std::isinf(inc))
          CHECK(batch == inc);
        else
          CHECK(inc == doctest::Approx(batch).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("identical hypotheses never raise the statistic") {
  // Full visibility: the null and alternative chains coincide.
  HypergameBundle hb = build_hypergame(deception_toy_game(), {0, 1}, 0.95);
  auto [mc0, mc1] = build_hypotheses(hb, ObservationMode::states_only);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Observation> trace = simulate_trace(hb, 20, rng);
    double phi = 0.0;
    for (const Observation& o : trace) {
      phi = update_discrimination(phi, log_likelihood_ratio(mc0, mc1, o));
      CHECK(phi == 0.0);
    }
  }
}

TEST_CASE("hidden action transitions are conclusive evidence") {
  HypergameBundle hb =
      build_hypergame(deception_toy_game(), deception_toy_visible(), 0.95);
  auto [mc0, mc1] = build_hypotheses(hb, ObservationMode::states_and_p1_actions);
  // P1 reveals the hidden action h at s1 (its ASW move): Pr0 = 0.
  Observation reveal{1, 0, 2, 1};
  CHECK(log_likelihood_ratio(mc0, mc1, reveal) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("stopping time is monotone in the threshold") {
  std::vector<double> phis = {0.0, 0.4, 1.1, 0.9, 1.7, 2.4, 3.3};
  auto first_stop = [&](double c) {
    DetectorConfig cfg;
    cfg.threshold = c;
    for (size_t i = 0; i < phis.size(); ++i)
      if (check_stop(phis[i], cfg)) return static_cast<int>(i);
    return static_cast<int>(phis.size());
  };
  int prev = -1;
  for (double c : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    int stop = first_stop(c);
    CHECK(stop >= prev);
    prev = stop;
  }
  CHECK(first_stop(2.0) == 5);
}

TEST_CASE("detector config validation") {
  DetectorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.threshold = 2.0;
  cfg.zero_prob = ZeroProbPolicy::clamp;
  cfg.clamp_eps = 0.5;  // far too coarse
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
