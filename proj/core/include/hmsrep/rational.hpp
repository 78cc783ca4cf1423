#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hmsrep {

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator. Backed by GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: implicit from integers
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p" (optional leading '-'). Throws ParseError.
  static Rational parse(std::string_view text);

  /// The exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  /// 2^exponent for any signed exponent.
  static Rational pow2(long exponent);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const noexcept { return value_; }

  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  /// True iff the denominator is a power of two.
  bool is_dyadic() const;

  mpz_class floor() const;
  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Always "p/q", including integers ("1/1", "0/1").
  std::string fraction_str() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws Error(invalid_argument) on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

}  // namespace hmsrep
