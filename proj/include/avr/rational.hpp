#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "avr/error.hpp"

namespace avr {

/*
 * Exact rational number with a 64-bit numerator and denominator.
 *
 * Invariants: den > 0, gcd(|num|, den) == 1. Intermediate products are
 * formed in 128 bits and reduced before narrowing; a result that still
 * does not fit raises std::overflow_error rather than wrapping.
 *
 * Ballot weights, approval scores and every rule objective are carried
 * in this type so that ties are decided exactly.
 */
class Rational {
 public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT: implicit by intent
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  [[nodiscard]] double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "n" for integers, "n/d" otherwise.
  [[nodiscard]] std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts integers ("7", "-7"), fractions ("17/24") and plain decimals
  // ("0.196", "-1.5"). Exponent notation is rejected.
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (__builtin_add_overflow(num_, o.num_, &r)) throw std::overflow_error("Rational: overflow");
      num_ = r;
      return *this;
    }
    using I = __int128;
    assign128(I(num_) * o.den_ + I(o.num_) * den_, I(den_) * o.den_);
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    using I = __int128;
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r;
      if (__builtin_mul_overflow(num_, o.num_, &r)) throw std::overflow_error("Rational: overflow");
      num_ = r;
      return *this;
    }
    assign128(I(num_) * o.num_, I(den_) * o.den_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    using I = __int128;
    assign128(I(num_) * o.den_, I(den_) * o.num_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("Rational: overflow");
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend constexpr bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    using I = __int128;
    I l = I(a.num_) * b.den_;
    I r = I(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) noexcept {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign(std::int64_t n, std::int64_t d) { assign128(n, d); }

  void assign128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw std::overflow_error("Rational: overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return InputError("not a rational number: '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s, bool allow_sign) -> std::int64_t {
    if (s.empty()) throw fail();
    bool neg = false;
    if (allow_sign && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
      if (s.empty()) throw fail();
    }
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw fail();
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, c - '0', &v)) throw fail();
    }
    return neg ? -v : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash), true);
    std::int64_t d = parse_int(text.substr(slash + 1), false);
    if (d == 0) throw fail();
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw fail();
    std::int64_t w = whole.empty() ? 0 : parse_int(whole, false);
    std::int64_t scale = 1;
    std::int64_t f = 0;
    if (frac.size() > 18) throw fail();
    for (char c : frac) {
      if (c < '0' || c > '9') throw fail();
      f = f * 10 + (c - '0');
      scale *= 10;
    }
    Rational r = Rational(w) + Rational(f, scale);
    return neg ? -r : r;
  }
  return Rational(parse_int(text, true));
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace avr

template <>
struct std::hash<avr::Rational> {
  std::size_t operator()(const avr::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u + std::hash<std::int64_t>{}(r.den());
  }
};
