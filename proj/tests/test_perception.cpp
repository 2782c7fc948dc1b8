#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "deception/json_io.hpp"
#include "deception/perception.hpp"
#include "toy_games.hpp"

using namespace deception;
using namespace deception::testing;

TEST_CASE("full visibility leaves the game unchanged") {
  ConcurrentGame g = deception_toy_game();
  ConcurrentGame g2 = derive_perceptual_game(g, {0, 1});
  CHECK(game_to_json(g2) == game_to_json(g));
}

TEST_CASE("hidden rows become undefined, visible rows survive intact") {
  ConcurrentGame g = deception_toy_game();
  ConcurrentGame g2 = derive_perceptual_game(g, deception_toy_visible());
  for (State s = 0; s < g.num_states; ++s) {
    for (int b = 0; b < g.num_a2(); ++b) {
      CHECK_FALSE(g2.row(s, 1, b).has_value());
      REQUIRE(g2.row(s, 0, b).has_value());
      CHECK(g2.row(s, 0, b)->entries == g.row(s, 0, b)->entries);
    }
  }
  CHECK_THROWS_AS(successor_distribution(g2, 0, 1, 0), UndefinedTransitionError);
}

TEST_CASE("restriction is idempotent") {
  ConcurrentGame g = deception_toy_game();
  ConcurrentGame once = derive_perceptual_game(g, deception_toy_visible());
  ConcurrentGame twice = derive_perceptual_game(once, deception_toy_visible());
  CHECK(game_to_json(once) == game_to_json(twice));
}

TEST_CASE("restriction rejects games it would leave actionless") {
  ConcurrentGame g = deception_toy_game();
  // Make s1 reachable only through the hidden action.
  for (int b = 0; b < 2; ++b) g.row(1, 0, b).reset();
  CHECK_THROWS_AS(derive_perceptual_game(g, deception_toy_visible()), GameError);
  CHECK_THROWS_AS(derive_perceptual_game(deception_toy_game(), std::vector<int>{}),
                  ConfigError);
  CHECK_THROWS_AS(derive_perceptual_game(deception_toy_game(), std::vector<int>{7}),
                  ConfigError);
}

TEST_CASE("toy hypergame regions") {
  HypergameBundle hb =
      build_hypergame(deception_toy_game(), deception_toy_visible(), 0.95);
  CHECK(hb.asw1.contains(1));
  CHECK(hb.asw1.contains(2));
  CHECK_FALSE(hb.asw1.contains(0));
  CHECK(hb.asw2.count() == 1);
  CHECK(hb.asw2.contains(3));
  CHECK(hb.asw1_p.count() == 1);
  CHECK(hb.asw2_p.contains(0));
  CHECK(hb.asw2_p.contains(1));
  CHECK(hb.asw2_p.contains(3));
  for (double v : hb.values_true) CHECK(std::abs(v) <= 1.0 + 1e-9);
  // u1 is a discounted reachability probability.
  for (double u : hb.u1.values) {
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("region containment holds on random games") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    ConcurrentGame g = random_game(rng);
    auto [asw1, w1] = compute_asw(g, 1);
    auto [asw2, w2] = compute_asw(g, 2);
    ConcurrentGame g2 = derive_perceptual_game(g, {0, 1});
    auto [asw1p, w1p] = compute_asw(g2, 1, GameTag::perceptual);
    auto [asw2p, w2p] = compute_asw(g2, 2, GameTag::perceptual);
    // Dropping P1 actions can only shrink P1's region and grow P2's.
    CHECK(check_asw_containment(asw1p, asw1));
    CHECK(check_asw_containment(asw2, asw2p));
    (void)w1;
    (void)w2;
    (void)w1p;
    (void)w2p;
  }
}

TEST_CASE("bundle JSON round trip") {
  HypergameBundle hb =
      build_hypergame(deception_toy_game(), deception_toy_visible(), 0.95);
  json j = bundle_to_json(hb);
  HypergameBundle back = bundle_from_json(j);
  CHECK(bundle_to_json(back) == j);
  CHECK(back.asw2_p.count() == hb.asw2_p.count());
  CHECK(back.u1.values == hb.u1.values);
}

TEST_CASE("BSR phase boundaries") {
  HypergameBundle hb =
      build_hypergame(deception_toy_game(), deception_toy_visible(), 0.95);
  BSRModel model{&hb, {3, 2, 4}};
  CHECK(model.phase(0) == Phase::perceptual);
  CHECK(model.phase(5) == Phase::perceptual);
  CHECK(model.phase(6) == Phase::undefined_window);
  CHECK(model.phase(9) == Phase::undefined_window);
  CHECK(model.phase(10) == Phase::true_game);

  CHECK(bsr_action(model, 0, 0).has_value());
  CHECK_FALSE(bsr_action(model, 0, 7).has_value());
  auto late = bsr_action(model, 0, 12);
  REQUIRE(late.has_value());
  CHECK(late->size() == 2);

  DeceptionTimeline bad{-1, 0, 0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("completions agree with the model outside the window") {
  HypergameBundle hb =
      build_hypergame(deception_toy_game(), deception_toy_visible(), 0.95);
  for (FillPolicy fill : {FillPolicy::keep_perceptual, FillPolicy::uniform_random,
                          FillPolicy::fixed_strategy}) {
    BSRCompletion c;
    c.model = {&hb, {2, 1, 3}};
    c.fill = fill;
    c.fixed = hb.pi2_true;
    for (State s = 0; s < hb.game.num_states; ++s) {
      for (int step : {0, 3, 5, 8}) {
        std::vector<double> row = c.action(s, step);
        REQUIRE(row.size() == 2);
        double total = row[0] + row[1];
        CHECK(total == doctest::Approx(1.0));
        if (auto expected = bsr_action(c.model, s, step)) CHECK(row == *expected);
      }
    }
    // Inside the window the fill policy decides.
    std::vector<double> w = c.action(0, 4);
    if (fill == FillPolicy::uniform_random) CHECK(w[0] == doctest::Approx(0.5));
    if (fill == FillPolicy::keep_perceptual) {
      auto r = hb.pi2_perc.row(0);
      CHECK(w == std::vector<double>(r.begin(), r.end()));
    }
  }
}
