#include "deception/game.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace deception {

std::vector<int> ConcurrentGame::available_a1(State s) const {
  std::vector<int> out;
  for (int a = 0; a < num_a1(); ++a)
    if (a1_defined(s, a)) out.push_back(a);
  return out;
}

namespace {

std::string sab(const ConcurrentGame& g, State s, int a, int b) {
  std::ostringstream os;
  os << "(" << (s < static_cast<State>(g.state_names.size()) ? g.state_names[s]
                                                             : std::to_string(s))
     << ", " << g.actions1[a] << ", " << g.actions2[b] << ")";
  return os.str();
}

}  // namespace

Diagnostics validate_game(const ConcurrentGame& game) {
  Diagnostics diag;
  auto add = [&](const std::string& msg) { diag.violations.push_back(msg); };

  if (!(game.discount > 0.0 && game.discount <= 1.0))
    add("discount must lie in (0,1], got " + std::to_string(game.discount));
  if (game.initial < 0 || game.initial >= game.num_states)
    add("initial state out of range");

  for (State s = 0; s < game.num_states; ++s) {
    if (game.in_f1[s] && game.in_f2[s])
      add("state " + game.state_names[s] + " belongs to both target sets");
    for (int a = 0; a < game.num_a1(); ++a) {
      for (int b = 0; b < game.num_a2(); ++b) {
        const auto& r = game.row(s, a, b);
        if (!r) continue;
        double sum = 0.0;
        for (const auto& [t, p] : r->entries) {
          if (p < 0.0) add("negative probability at " + sab(game, s, a, b));
          if (t < 0 || t >= game.num_states)
            add("successor out of range at " + sab(game, s, a, b));
          sum += p;
        }
        if (std::abs(sum - 1.0) > kProbTol)
          add("probabilities sum to " + std::to_string(sum) + " at " +
              sab(game, s, a, b));
        if (game.is_target(s)) {
          bool self_loop = r->entries.size() == 1 && r->entries[0].first == s &&
                           std::abs(r->entries[0].second - 1.0) <= kProbTol;
          if (!self_loop)
            add("target state not absorbing at " + sab(game, s, a, b));
        }
      }
    }
  }
  return diag;
}

const Dist& successor_distribution(const ConcurrentGame& game, State s, int a, int b) {
  const auto& r = game.row(s, a, b);
  if (!r)
    throw UndefinedTransitionError("transition undefined at " + sab(game, s, a, b));
  return *r;
}

bool play_consistent(const ConcurrentGame& game, const Play& play) {
  for (size_t i = 0; i < play.steps.size(); ++i) {
    const auto& st = play.steps[i];
    const auto& r = game.row(st.state, st.a1, st.a2);
    if (!r) return false;
    State next = play.state_at(i + 1);
    if (r->prob(next) <= 0.0) return false;
  }
  return true;
}

State sample_dist(const Dist& dist, double u) {
  double acc = 0.0;
  for (const auto& [t, p] : dist.entries) {
    acc += p;
    if (u < acc) return t;
  }
  return dist.entries.back().first;
}

State sample_transition(const ConcurrentGame& game, State s, int a, int b,
                        uint64_t rng_seed) {
  const Dist& dist = successor_distribution(game, s, a, b);
  std::mt19937_64 rng(rng_seed);
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return sample_dist(dist, u);
}

}  // namespace deception
