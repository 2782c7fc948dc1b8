#include "deception/soccer.hpp"

#include <sstream>

namespace deception {

void GridConfig::validate() const {
  if (rows < 1 || cols < 1) throw ConfigError("grid must be at least 1x1");
  if (collision_ball_prob < 0.0 || collision_ball_prob > 1.0)
    throw ConfigError("collision_ball_prob must lie in [0,1]");
  for (const Cell& c : walls)
    if (!in_bounds(c)) throw ConfigError("wall cell out of bounds");
  for (const Cell& c : hidden_cells) {
    if (!in_bounds(c)) throw ConfigError("hidden cell out of bounds");
    if (walls.count(c)) throw ConfigError("cell is both wall and hidden");
  }
  if (variant == GridVariant::bouncing && hidden_cells.empty())
    throw ConfigError("bouncing variant requires at least one hidden cell");
}

namespace {

constexpr int kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kHidden = 4;

Cell step_cell(Cell c, int action) {
  switch (action) {
    case kUp: return {c.row - 1, c.col};
    case kDown: return {c.row + 1, c.col};
    case kLeft: return {c.row, c.col - 1};
    case kRight: return {c.row, c.col + 1};
    default: return c;
  }
}

// Out-of-bounds and wall moves resolve to "stay". The hidden action
// jumps two cells down; hidden cells block normal moves but are
// passable (as the intermediate cell) for the hidden action.
Cell resolve_move(const GridConfig& cfg, Cell c, int action) {
  if (action == kHidden) {
    Cell mid{c.row + 1, c.col};
    Cell dst{c.row + 2, c.col};
    bool mid_ok = cfg.in_bounds(mid) && !cfg.walls.count(mid);
    if (mid_ok && cfg.playable(dst)) return dst;
    return c;
  }
  Cell dst = step_cell(c, action);
  return cfg.playable(dst) ? dst : c;
}

std::string cell_str(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

}  // namespace

SoccerState SoccerGame::decode(State s) const {
  int ball = s & 1;
  int rest = s >> 1;
  int i2 = rest % num_cells();
  int i1 = rest / num_cells();
  return SoccerState{cells[i1], cells[i2], ball != 0};
}

State SoccerGame::encode(const SoccerState& st) const {
  int i1 = cell_index[st.p1.row * cfg.cols + st.p1.col];
  int i2 = cell_index[st.p2.row * cfg.cols + st.p2.col];
  if (i1 < 0 || i2 < 0) throw ConfigError("state on wall cell");
  return static_cast<State>(((i1 * num_cells()) + i2) * 2 + (st.ball ? 1 : 0));
}

SoccerGame build_soccer_game(const GridConfig& cfg) {
  cfg.validate();

  SoccerGame sg;
  sg.cfg = cfg;
  sg.cell_index.assign(cfg.rows * cfg.cols, -1);
  for (int r = 0; r < cfg.rows; ++r)
    for (int c = 0; c < cfg.cols; ++c) {
      Cell cell{r, c};
      if (cfg.playable(cell)) {
        sg.cell_index[r * cfg.cols + c] = static_cast<int>(sg.cells.size());
        sg.cells.push_back(cell);
      }
    }
  if (sg.cells.empty()) throw ConfigError("no playable cells");

  ConcurrentGame& g = sg.game;
  g.actions1 = {"a_U", "a_D", "a_L", "a_R", "a_H"};
  g.actions2 = {"a_U", "a_D", "a_L", "a_R"};
  sg.hidden_action = kHidden;
  sg.visible_actions = {kUp, kDown, kLeft, kRight};
  g.num_states = sg.num_cells() * sg.num_cells() * 2;
  g.allocate();
  g.state_names.resize(g.num_states);

  for (State s = 0; s < g.num_states; ++s) {
    SoccerState st = sg.decode(s);
    g.state_names[s] =
        "(" + cell_str(st.p1) + "," + cell_str(st.p2) + "," + (st.ball ? "1" : "0") + ")";
    if (st.p1.col == cfg.cols - 1 && st.ball) g.in_f1[s] = 1;
    if (st.p2.col == 0 && !st.ball) g.in_f2[s] = 1;
  }

  for (State s = 0; s < g.num_states; ++s) {
    SoccerState st = sg.decode(s);
    bool absorbing = g.is_target(s);
    for (int a = 0; a < g.num_a1(); ++a) {
      for (int b = 0; b < g.num_a2(); ++b) {
        Dist dist;
        if (absorbing) {
          dist.entries = {{s, 1.0}};
        } else {
          Cell d1 = resolve_move(cfg, st.p1, a);
          Cell d2 = resolve_move(cfg, st.p2, b);
          bool same_cell = d1 == d2;
          bool swap = d1 == st.p2 && d2 == st.p1 && !(st.p1 == st.p2);
          if (same_cell || swap) {
            double q = cfg.collision_ball_prob;  // P1 gets the ball
            State s1 = sg.encode({d1, d2, true});
            State s0 = sg.encode({d1, d2, false});
            if (q >= 1.0)
              dist.entries = {{s1, 1.0}};
            else if (q <= 0.0)
              dist.entries = {{s0, 1.0}};
            else if (s0 < s1)
              dist.entries = {{s0, 1.0 - q}, {s1, q}};
            else
              dist.entries = {{s1, q}, {s0, 1.0 - q}};
          } else {
            dist.entries = {{sg.encode({d1, d2, st.ball}), 1.0}};
          }
        }
        g.row(s, a, b) = std::move(dist);
      }
    }
  }

  // Start: P1 on the leftmost playable column-0 cell, P2 opposite, P1 holds.
  Cell p1{}, p2{};
  bool got1 = false, got2 = false;
  for (const Cell& c : sg.cells) {
    if (!got1 && c.col == 0) { p1 = c; got1 = true; }
    if (c.col == cfg.cols - 1 && !got2) { p2 = c; got2 = true; }
  }
  if (!got1 || !got2) throw ConfigError("no playable cell in a boundary column");
  g.initial = sg.encode({p1, p2, true});
  return sg;
}

GridConfig default_bouncing_config() {
  GridConfig cfg;
  cfg.rows = 3;
  cfg.cols = 5;
  cfg.variant = GridVariant::bouncing;
  cfg.walls = {{1, 1}, {1, 3}};
  cfg.hidden_cells = {{1, 2}};
  return cfg;
}

}  // namespace deception
