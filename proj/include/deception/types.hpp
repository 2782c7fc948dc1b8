#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deception {

using State = int32_t;

inline constexpr double kProbTol = 1e-9;

// Sparse probability distribution over states, entries sorted by state.
struct Dist {
  std::vector<std::pair<State, double>> entries;

  double prob(State s) const {
    for (const auto& [t, p] : entries)
      if (t == s) return p;
    return 0.0;
  }
  double total() const {
    double sum = 0.0;
    for (const auto& [t, p] : entries) sum += p;
    return sum;
  }
};

struct GameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndefinedTransitionError : GameError {
  using GameError::GameError;
};

struct ConfigError : GameError {
  using GameError::GameError;
};

struct NonConvergenceError : GameError {
  using GameError::GameError;
};

}  // namespace deception
