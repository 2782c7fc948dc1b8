#pragma once

#include <set>
#include <string>
#include <vector>

#include "deception/game.hpp"

namespace deception {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class GridVariant { basic, bouncing };

// Grid geometry for the soccer game family. Hidden cells are bouncing
// walls in P2's perceptual game but traversable via P1's hidden action.
struct GridConfig {
  int rows = 3;
  int cols = 5;
  std::set<Cell> walls;
  std::set<Cell> hidden_cells;
  double collision_ball_prob = 0.5;
  GridVariant variant = GridVariant::basic;

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
  }
  bool is_wall(Cell c) const { return walls.count(c) || hidden_cells.count(c); }
  bool playable(Cell c) const { return in_bounds(c) && !is_wall(c); }

  void validate() const;
};

struct SoccerState {
  Cell p1;
  Cell p2;
  bool ball = false;  // true: P1 possesses
  auto operator<=>(const SoccerState&) const = default;
};

// Soccer game plus the cell indexing needed for heatmaps and replay.
struct SoccerGame {
  ConcurrentGame game;
  GridConfig cfg;
  std::vector<Cell> cells;          // playable cells, row-major
  std::vector<int> cell_index;      // rows*cols -> playable index or -1
  int hidden_action = 4;            // index of a_H in actions1
  std::vector<int> visible_actions; // A1 minus the hidden action

  SoccerState decode(State s) const;
  State encode(const SoccerState& st) const;
  int num_cells() const { return static_cast<int>(cells.size()); }
};

// True game G with A1 = {U,D,L,R,H}, A2 = {U,D,L,R}. F1: P1 in the
// rightmost column with the ball; F2: P2 in the leftmost column with it.
SoccerGame build_soccer_game(const GridConfig& cfg);

// Approximation of the bouncing-wall arena; the paper's figure leaves
// the exact layout unspecified, so this layout is a stand-in.
GridConfig default_bouncing_config();

}  // namespace deception
