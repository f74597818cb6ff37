#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace copred {

// Two-valued lattice {0, 1} with 0 <= 1.
struct Bool2 {
  using value_type = std::uint8_t;
  static constexpr value_type bottom() { return 0; }
  static constexpr value_type top() { return 1; }
  static constexpr bool leq(value_type a, value_type b) { return a <= b; }
  static constexpr value_type meet(value_type a, value_type b) { return a & b; }
  static constexpr value_type join(value_type a, value_type b) { return a | b; }
  static std::string render(value_type v) { return v ? "1" : "0"; }
};

// Exponent of a symbolic discount constant 0 < c < 1.  The value n stands
// for the distance c^n and `inf` for the distance 0.  Distances in [0,1]
// carry the reverse order, so larger exponents (smaller distances) sit
// higher and `inf` is the greatest element.
class Level {
 public:
  constexpr Level() : raw_(0) {}
  static constexpr Level of(std::uint32_t n) { return Level(n); }
  static constexpr Level inf() { return Level(kInf); }

  constexpr bool is_inf() const { return raw_ == kInf; }
  // Finite exponent; only meaningful when !is_inf().
  constexpr std::uint32_t exponent() const { return raw_; }

  // Multiplying a distance by c bumps the exponent; c * 0 stays 0.
  constexpr Level discounted() const {
    return is_inf() ? inf() : Level(raw_ + 1);
  }

  friend constexpr bool operator==(Level, Level) = default;
  friend constexpr auto operator<=>(Level a, Level b) {
    return a.raw_ <=> b.raw_;
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  explicit constexpr Level(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_;
};

// The lattice of discount levels: a total order with `inf` on top,
// meet = min and join = max of exponents.
struct DiscountLevel {
  using value_type = Level;
  static constexpr value_type bottom() { return Level::of(0); }
  static constexpr value_type top() { return Level::inf(); }
  static constexpr bool leq(value_type a, value_type b) { return a <= b; }
  static constexpr value_type meet(value_type a, value_type b) { return a < b ? a : b; }
  static constexpr value_type join(value_type a, value_type b) { return a < b ? b : a; }
  static std::string render(value_type v) {
    if (v.is_inf()) return "0";
    if (v.exponent() == 0) return "1";
    if (v.exponent() == 1) return "c";
    return "c^" + std::to_string(v.exponent());
  }
};

template <typename L>
concept ValueLattice = requires(typename L::value_type a, typename L::value_type b) {
  { L::bottom() } -> std::convertible_to<typename L::value_type>;
  { L::top() } -> std::convertible_to<typename L::value_type>;
  { L::leq(a, b) } -> std::convertible_to<bool>;
  { L::meet(a, b) } -> std::convertible_to<typename L::value_type>;
  { L::join(a, b) } -> std::convertible_to<typename L::value_type>;
};

}  // namespace copred
