#pragma once

#include <array>
#include <bit>
#include <cstdint>

#include "hypersonic/geometry.hpp"

namespace hypersonic {

// One bit per cell, row-major (index = y * 13 + x), 143 bits in three words.
// Bits 143..191 are padding and stay zero.
class BitPlane {
 public:
  static constexpr int kWords = 3;

  constexpr BitPlane() = default;

  static constexpr BitPlane from_words(std::uint64_t w0, std::uint64_t w1, std::uint64_t w2) {
    BitPlane p;
    p.w_ = {w0, w1, w2};
    return p;
  }
  static constexpr BitPlane single(int index) {
    BitPlane p;
    p.set(index);
    return p;
  }
  static constexpr BitPlane all();

  constexpr bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  constexpr void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  constexpr void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  constexpr bool test(Pos p) const { return test(cell_index(p)); }

  constexpr bool any() const { return (w_[0] | w_[1] | w_[2]) != 0; }
  constexpr bool none() const { return !any(); }
  constexpr int count() const { return std::popcount(w_[0]) + std::popcount(w_[1]) + std::popcount(w_[2]); }

  // Lowest / highest set index; undefined on an empty plane.
  constexpr int lowest() const {
    if (w_[0]) return std::countr_zero(w_[0]);
    if (w_[1]) return 64 + std::countr_zero(w_[1]);
    return 128 + std::countr_zero(w_[2]);
  }
  constexpr int highest() const {
    if (w_[2]) return 191 - std::countl_zero(w_[2]);
    if (w_[1]) return 127 - std::countl_zero(w_[1]);
    return 63 - std::countl_zero(w_[0]);
  }

  constexpr BitPlane operator|(const BitPlane& o) const { return from_words(w_[0] | o.w_[0], w_[1] | o.w_[1], w_[2] | o.w_[2]); }
  constexpr BitPlane operator&(const BitPlane& o) const { return from_words(w_[0] & o.w_[0], w_[1] & o.w_[1], w_[2] & o.w_[2]); }
  constexpr BitPlane operator^(const BitPlane& o) const { return from_words(w_[0] ^ o.w_[0], w_[1] ^ o.w_[1], w_[2] ^ o.w_[2]); }
  constexpr BitPlane andnot(const BitPlane& o) const { return from_words(w_[0] & ~o.w_[0], w_[1] & ~o.w_[1], w_[2] & ~o.w_[2]); }
  constexpr BitPlane& operator|=(const BitPlane& o) { return *this = *this | o; }
  constexpr BitPlane& operator&=(const BitPlane& o) { return *this = *this & o; }
  constexpr BitPlane& operator^=(const BitPlane& o) { return *this = *this ^ o; }

  // Index shifts; bits moved past the last cell are dropped. Callers mask column wrap.
  constexpr BitPlane shifted_up(int n) const;    // index + n
  constexpr BitPlane shifted_down(int n) const;  // index - n

  // Cells reachable by one orthogonal step (excluding the cells themselves).
  constexpr BitPlane neighbours() const;

  constexpr const std::array<std::uint64_t, kWords>& words() const { return w_; }

  // Visits every set index in increasing order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (int k = 0; k < kWords; ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        f(k * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  constexpr bool operator==(const BitPlane&) const = default;

 private:
  std::array<std::uint64_t, kWords> w_{};
};

namespace detail {

constexpr BitPlane make_valid_mask() {
  BitPlane p;
  for (int i = 0; i < kCells; ++i) p.set(i);
  return p;
}

constexpr BitPlane make_column_mask(int column) {
  BitPlane p;
  for (int y = 0; y < kHeight; ++y) p.set(cell_index({column, y}));
  return p;
}

constexpr BitPlane make_wall_mask() {
  BitPlane p;
  for (int i = 0; i < kCells; ++i)
    if (is_wall(cell_pos(i))) p.set(i);
  return p;
}

}  // namespace detail

inline constexpr BitPlane kValidCells = detail::make_valid_mask();
inline constexpr BitPlane kFirstColumn = detail::make_column_mask(0);
inline constexpr BitPlane kLastColumn = detail::make_column_mask(kWidth - 1);
inline constexpr BitPlane kWalls = detail::make_wall_mask();

constexpr BitPlane BitPlane::all() { return kValidCells; }

constexpr BitPlane BitPlane::shifted_up(int n) const {
  BitPlane r = from_words(w_[0] << n, (w_[1] << n) | (w_[0] >> (64 - n)), (w_[2] << n) | (w_[1] >> (64 - n)));
  return r & kValidCells;
}

constexpr BitPlane BitPlane::shifted_down(int n) const {
  return from_words((w_[0] >> n) | (w_[1] << (64 - n)), (w_[1] >> n) | (w_[2] << (64 - n)), w_[2] >> n);
}

constexpr BitPlane BitPlane::neighbours() const {
  const BitPlane east = andnot(kLastColumn).shifted_up(1);
  const BitPlane west = andnot(kFirstColumn).shifted_down(1);
  return east | west | shifted_up(kWidth) | shifted_down(kWidth);
}

}  // namespace hypersonic
