#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mktmem {

/// Exact rational number in canonical reduced form.
///
/// Numerator and denominator are 64-bit; every operation computes in 128-bit
/// intermediates and throws std::overflow_error if the reduced result does not
/// fit. There is no floating-point path except to_double(), which exists for
/// rendering only.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  // Implicit so integer literals read naturally in patterns: {-2, 2, 3}.
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  [[nodiscard]] std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] std::int64_t den() const noexcept { return den_; }
  [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }
  [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }

  /// Parses "n" or "n/d" (d > 0). Non-reduced input is accepted and reduced.
  static Rational parse(std::string_view text);
  /// Parses "n", "n/d" or a plain decimal such as "-1.6" or ".25", exactly.
  static Rational parse_decimal(std::string_view text);

  /// Canonical text: "n" when the denominator is 1, otherwise "n/d".
  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const noexcept;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept;

 private:
  __extension__ typedef __int128 wide;
  static Rational from_wide(wide numerator, wide denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// -1, 0 or +1. sign(0) is 0, so a zero return contributes nothing to a gain.
[[nodiscard]] int sign(const Rational& x) noexcept;
[[nodiscard]] Rational abs(const Rational& x);

/// Rounds x to the nearest multiple of quantum (> 0), ties away from zero.
[[nodiscard]] Rational round_to_multiple(const Rational& x, const Rational& quantum);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace mktmem

template <>
struct std::hash<mktmem::Rational> {
  std::size_t operator()(const mktmem::Rational& r) const noexcept {
    const auto h1 = std::hash<std::int64_t>{}(r.num());
    const auto h2 = std::hash<std::int64_t>{}(r.den());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};
