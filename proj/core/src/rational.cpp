#include "hmsrep/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "hmsrep/error.hpp"

namespace hmsrep {

namespace {

// Reads an optionally signed run of decimal digits starting at `pos`.
std::string read_integer(std::string_view text, std::size_t& pos, bool allow_sign) {
  const std::size_t start = pos;
  if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  const std::size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == digits) {
    throw ParseError(pos, "expected digit at position " + std::to_string(pos) + " in '" +
                              std::string(text) + "'");
  }
  std::string out(text.substr(start, pos - start));
  if (!out.empty() && out.front() == '+') out.erase(0, 1);
  return out;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(Errc::invalid_argument, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  const std::string num = read_integer(text, pos, true);
  std::string den = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::size_t den_pos = pos;
    den = read_integer(text, pos, false);
    if (mpz_class(den) == 0) throw ParseError(den_pos, "zero denominator in '" + std::string(text) + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) {
    throw ParseError(pos, "unexpected character '" + std::string(1, text[pos]) + "' at position " +
                              std::to_string(pos) + " in '" + std::string(text) + "'");
  }
  mpq_class q{mpz_class(num), mpz_class(den)};
  return Rational(std::move(q));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(Errc::invalid_argument, "non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(std::move(q));
}

Rational Rational::pow2(long exponent) {
  mpz_class p = 1;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  if (exponent >= 0) return Rational(mpq_class(p));
  return Rational(mpq_class(mpz_class(1), p));
}

bool Rational::is_dyadic() const {
  const mpz_class& den = value_.get_den();
  // A positive integer is a power of two iff it has exactly one set bit.
  return mpz_popcount(den.get_mpz_t()) == 1;
}

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::fraction_str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(Errc::invalid_argument, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace hmsrep
