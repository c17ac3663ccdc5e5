#include "mktmem/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace mktmem {
namespace {

__extension__ typedef __int128 i128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t value) : Rational(from_wide(value, 1)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : Rational(from_wide(numerator, denominator)) {}

Rational Rational::from_wide(i128 numerator, i128 denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const i128 g = gcd128(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  // INT64_MIN is excluded so that negation never overflows.
  if (abs128(numerator) > kMax || denominator > kMax) {
    throw std::overflow_error("rational overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(numerator);
  r.den_ = static_cast<std::int64_t>(denominator);
  return r;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const auto n = parse_int(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (den_text.empty() || den_text.front() == '-' || den_text.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  const auto d = parse_int(den_text, text);
  if (d <= 0) throw std::invalid_argument("rational denominator must be positive in '" + std::string(text) + "'");
  return Rational(n, d);
}

Rational Rational::parse_decimal(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse(text);
  auto int_part = text.substr(0, dot);
  const auto frac_part = text.substr(dot + 1);
  bool negative = false;
  if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
    negative = int_part.front() == '-';
    int_part.remove_prefix(1);
  }
  if ((int_part.empty() && frac_part.empty()) || frac_part.size() > 18) {
    throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  }
  for (const char c : frac_part) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  }
  if (!int_part.empty() && (int_part.front() < '0' || int_part.front() > '9')) {
    throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  }
  const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
  const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  Rational value = Rational(whole) + Rational(frac, scale);
  return negative ? -value : value;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(static_cast<i128>(num_) + rhs.num_, den_);
  } else {
    *this = from_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                      static_cast<i128>(den_) * rhs.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero rational");
  *this = from_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept {
  const i128 l = static_cast<i128>(lhs.num_) * rhs.den_;
  const i128 r = static_cast<i128>(rhs.num_) * lhs.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int sign(const Rational& x) noexcept { return (x.num() > 0) - (x.num() < 0); }

Rational abs(const Rational& x) { return sign(x) < 0 ? -x : x; }

Rational round_to_multiple(const Rational& x, const Rational& quantum) {
  if (sign(quantum) <= 0) throw std::invalid_argument("quantum must be positive");
  const Rational ratio = abs(x) / quantum;
  // floor(|x|/q + 1/2) rounds half away from zero once the sign is restored.
  const Rational shifted = ratio + Rational(1, 2);
  const std::int64_t k = shifted.num() / shifted.den();
  const Rational magnitude = Rational(k) * quantum;
  return sign(x) < 0 ? -magnitude : magnitude;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace mktmem
