#pragma once

#include <limits>
#include <vector>

#include "deception/perception.hpp"

namespace deception {

enum class ObservationMode { states_only, states_and_p1_actions };
enum class ZeroProbPolicy { immediate_detect, clamp };

struct DetectorConfig {
  double threshold = 2.0;  // c_gamma
  ObservationMode mode = ObservationMode::states_only;
  ZeroProbPolicy zero_prob = ZeroProbPolicy::immediate_detect;
  double clamp_eps = 1e-6;

  void validate() const {
    if (threshold <= 0.0) throw ConfigError("detection threshold must be positive");
    if (zero_prob == ZeroProbPolicy::clamp &&
        (clamp_eps <= 0.0 || clamp_eps > 1e-3))
      throw ConfigError("clamp epsilon must lie in (0, 1e-3]");
  }
};

enum class HypothesisLabel { null_mc0, alternative_mc1 };

// Markov chain over game states conditioned on P2's action: P1's
// strategy marginalized out of the kernel. In action-observable mode
// the chain lives on S x A1 and entries carry the P1 action.
struct HypothesisChain {
  HypothesisLabel label = HypothesisLabel::null_mc0;
  ObservationMode mode = ObservationMode::states_only;
  int num_states = 0;
  int num_b = 0;
  State initial = 0;

  struct Entry {
    int a = -1;  // -1 in states_only mode
    State next = 0;
    double p = 0.0;
  };
  std::vector<std::vector<Entry>> rows;  // indexed s * num_b + b

  const std::vector<Entry>& row(State s, int b) const {
    return rows[static_cast<size_t>(s) * num_b + b];
  }
  double prob(State s, int b, int a, State next) const;
};

struct Observation {
  State s = 0;
  int b = 0;
  State next = 0;
  int a = -1;  // only meaningful in states_and_p1_actions mode
};

struct DetectorState {
  double phi = 0.0;
  bool detected = false;
};

// MC0 marginalizes P1's perceptual-game strategy over the visible
// actions; MC1 marginalizes the true-game strategy over all of A1,
// with hidden-action rows taken from the true kernel.
std::pair<HypothesisChain, HypothesisChain> build_hypotheses(
    const HypergameBundle& bundle, ObservationMode mode);

// log(Pr1/Pr0) for one observed transition; +-infinity under the
// immediate_detect policy when exactly one hypothesis rules it out.
double log_likelihood_ratio(const HypothesisChain& mc0, const HypothesisChain& mc1,
                            const Observation& obs,
                            ZeroProbPolicy policy = ZeroProbPolicy::immediate_detect,
                            double clamp_eps = 1e-6);

// CUSUM recursion phi' = max(phi + llr, 0). +infinity is sticky.
double update_discrimination(double phi, double llr);

// Brute-force max over change points of suffix LLR sums: the oracle the
// incremental update is checked against. Infinite terms saturate the
// suffix sum the same sticky way the incremental update does.
double batch_discrimination(const HypothesisChain& mc0, const HypothesisChain& mc1,
                            const std::vector<Observation>& trace,
                            ZeroProbPolicy policy = ZeroProbPolicy::immediate_detect,
                            double clamp_eps = 1e-6);

inline bool check_stop(double phi, const DetectorConfig& cfg) {
  return phi >= cfg.threshold;
}

}  // namespace deception
