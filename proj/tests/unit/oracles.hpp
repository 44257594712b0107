#pragma once

// Independent reference implementations used only by the tests. They are
// written for clarity, not speed, and share no code with the library.

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <vector>

#include "lifeaup/board.hpp"
#include "lifeaup/rng.hpp"

namespace oracle {

using lifeaup::Board;
using lifeaup::Cell;
using lifeaup::CellColor;
using lifeaup::CellKind;
using lifeaup::Coord;

// Plain two-pass B3/S23: count every neighbor from a snapshot, then write
// the next generation. Spawner-free boards only.
inline Board life_step(const Board& in) {
  const int w = in.width();
  const int h = in.height();
  auto alive = [&](int x, int y) {
    const Cell& c = in.at({((x % w) + w) % w, ((y % h) + h) % h});
    return c.kind == CellKind::Life || c.kind == CellKind::Tree || c.kind == CellKind::Spawner;
  };
  auto parent = [&](int x, int y) {
    const Cell& c = in.at({((x % w) + w) % w, ((y % h) + h) % h});
    if (c.kind == CellKind::Tree) return CellColor::Green;
    if (c.kind == CellKind::Spawner) return CellColor::Yellow;
    return c.color;
  };
  Board out = in;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int n = 0;
      std::vector<CellColor> parents;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (alive(x + dx, y + dy)) {
            ++n;
            parents.push_back(parent(x + dx, y + dy));
          }
        }
      }
      const Cell& c = in.at({x, y});
      if (c.kind == CellKind::Life) {
        if (n != 2 && n != 3) out.set({x, y}, Cell::empty());
      } else if (c.kind == CellKind::Empty && n == 3) {
        CellColor color = CellColor::Gray;
        for (CellColor candidate : parents) {
          if (std::count(parents.begin(), parents.end(), candidate) >= 2) color = candidate;
        }
        out.set({x, y}, Cell::life(color));
      }
    }
  }
  return out;
}

inline int torus_dist(Coord a, Coord b, int w, int h) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return std::min(dx, w - dx) + std::min(dy, h - dy);
}

// Minimum over every partial matching: matched pairs pay their distance,
// every unmatched cell on either side pays `penalty`.
inline int brute_force_emd(const std::vector<Coord>& ref, const std::vector<Coord>& act, int w, int h,
                           int penalty = 1) {
  std::vector<bool> used(act.size(), false);
  int best = INT_MAX;
  auto rec = [&](auto&& self, std::size_t i, int cost, int matched) -> void {
    if (cost >= best) return;
    if (i == ref.size()) {
      best = std::min(best, cost + static_cast<int>(act.size() - matched) * penalty);
      return;
    }
    self(self, i + 1, cost + penalty, matched);
    for (std::size_t j = 0; j < act.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, cost + torus_dist(ref[i], act[j], w, h), matched + 1);
      used[j] = false;
    }
  };
  rec(rec, 0, 0, 0);
  return best;
}

// Random spawner-free board with Life of random colors and static terrain.
inline Board random_board(int w, int h, lifeaup::RngStream& rng, double density = 0.35, bool terrain = true) {
  Board b(w, h);
  const CellColor colors[] = {CellColor::Gray, CellColor::Green, CellColor::Red, CellColor::Yellow};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u = rng.uniform();
      if (u < density) {
        b.set({x, y}, Cell::life(colors[rng.uniform_int(4)]));
      } else if (terrain && u < density + 0.03) {
        b.set({x, y}, Cell::wall());
      } else if (terrain && u < density + 0.05) {
        b.set({x, y}, Cell::tree());
      } else if (terrain && u < density + 0.06) {
        b.set({x, y}, Cell::crate());
      }
    }
  }
  return b;
}

}  // namespace oracle
