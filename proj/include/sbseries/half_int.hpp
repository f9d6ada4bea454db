#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace sbs {

// Value on the half-integer grid, stored doubled so arithmetic stays exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return twice_ / 2.0; }
  // Largest integer k with k <= value.
  constexpr int floor() const { return twice_ >= 0 ? twice_ / 2 : -((1 - twice_) / 2); }

  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  /// "0", "1/2", "3", "7/2".
  std::string to_string() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

/// Parses "1.5", "3/2", "2", "0.5". Throws std::invalid_argument off the grid.
HalfInt parse_half_int(std::string_view text);

}  // namespace sbs
