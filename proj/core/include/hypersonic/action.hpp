#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>

#include "hypersonic/geometry.hpp"

namespace hypersonic {

enum class Move : std::uint8_t { Stay = 0, Up = 1, Down = 2, Left = 3, Right = 4 };

inline constexpr int kMoveCount = 5;
inline constexpr int kActionCount = 10;

constexpr Pos step_toward(Pos p, Move m) {
  switch (m) {
    case Move::Up: return {p.x, p.y - 1};
    case Move::Down: return {p.x, p.y + 1};
    case Move::Left: return {p.x - 1, p.y};
    case Move::Right: return {p.x + 1, p.y};
    case Move::Stay: break;
  }
  return p;
}

struct Action {
  Move move = Move::Stay;
  bool drop = false;

  constexpr int code() const { return static_cast<int>(move) * 2 + (drop ? 1 : 0); }
  static constexpr Action from_code(int code) { return {static_cast<Move>(code / 2), (code & 1) != 0}; }
  static constexpr Action stay() { return {}; }

  constexpr bool operator==(const Action&) const = default;
};

std::string to_string(Action a);

// Set of action codes packed into the low 10 bits.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr explicit ActionSet(std::uint16_t bits) : bits_(bits) {}

  constexpr void insert(Action a) { bits_ |= static_cast<std::uint16_t>(1u << a.code()); }
  constexpr bool contains(Action a) const { return (bits_ >> a.code()) & 1u; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint16_t bits() const { return bits_; }

  // The k-th action in code order, k < size().
  Action nth(int k) const {
    std::uint16_t b = bits_;
    for (int i = 0; i < k; ++i) b &= static_cast<std::uint16_t>(b - 1);
    return Action::from_code(std::countr_zero(b));
  }

  class iterator {
   public:
    constexpr explicit iterator(std::uint16_t b) : b_(b) {}
    constexpr Action operator*() const { return Action::from_code(std::countr_zero(b_)); }
    constexpr iterator& operator++() {
      b_ &= static_cast<std::uint16_t>(b_ - 1);
      return *this;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint16_t b_;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  constexpr bool operator==(const ActionSet&) const = default;

 private:
  std::uint16_t bits_ = 0;
};

// One action slot per seat; slots of dead or absent players are ignored.
using JointAction = std::array<Action, kMaxPlayers>;

}  // namespace hypersonic
