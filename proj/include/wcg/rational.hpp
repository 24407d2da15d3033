#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wcg {

/// Thrown when a textual rational is not of the form "num/den" or "num".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)

  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Parses "num/den" or a bare integer. Decimal points, exponents and
  /// zero denominators are rejected.
  static Rational parse(std::string_view text);

  /// Always "num/den", e.g. "3/1" for the integer 3.
  std::string str() const;

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Smallest integer >= r.
mpz_class ceil(const Rational& r);
mpz_class floor(const Rational& r);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

/// Certified enclosure lo <= q^(1/k) <= hi of the real k-th root of q >= 0.
/// When the root is rational, exact is true and lo == hi is the root.
struct RootBounds {
  Rational lo;
  Rational hi;
  bool exact = false;
};
RootBounds kth_root_bounds(const Rational& q, unsigned k, unsigned precision_bits = 96);

/// Smallest integer m with e^m >= x, for x > 0. Decided with exact rational
/// enclosures of e, so the result never depends on floating point.
long ceil_ln(const Rational& x);

}  // namespace wcg
