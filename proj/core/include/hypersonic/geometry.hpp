#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>

namespace hypersonic {

inline constexpr int kWidth = 13;
inline constexpr int kHeight = 11;
inline constexpr int kCells = kWidth * kHeight;
inline constexpr int kMaxPlayers = 4;
inline constexpr int kBombTimer = 8;
inline constexpr int kTurnLimit = 200;
inline constexpr int kCountdownTurns = 20;
inline constexpr int kInitialRange = 3;

struct Pos {
  int x = 0;
  int y = 0;

  constexpr bool operator==(const Pos&) const = default;
  constexpr auto operator<=>(const Pos&) const = default;
};

constexpr bool in_grid(Pos p) { return p.x >= 0 && p.x < kWidth && p.y >= 0 && p.y < kHeight; }

// Walls sit on every cell whose coordinates are both odd.
constexpr bool is_wall(Pos p) { return (p.x & 1) && (p.y & 1); }

constexpr int cell_index(Pos p) { return p.y * kWidth + p.x; }
constexpr Pos cell_pos(int index) { return {index % kWidth, index / kWidth}; }

constexpr int manhattan(Pos a, Pos b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

inline constexpr Pos kCenter{6, 5};

// Seating order: opposite corners first so 2-player games are diagonal.
inline constexpr std::array<Pos, kMaxPlayers> kStartCorners{Pos{0, 0}, Pos{12, 10}, Pos{12, 0}, Pos{0, 10}};

}  // namespace hypersonic
