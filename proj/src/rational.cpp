#include "wcg/rational.hpp"

#include <cctype>
#include <utility>

namespace wcg {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

// Exact k-th root of a nonnegative integer if it exists.
bool exact_root(const mpz_class& n, unsigned k, mpz_class& root) {
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

// Enclosure of e from the first `terms` terms of sum 1/j!; the tail is below
// 1/(terms! * terms).
std::pair<Rational, Rational> e_bounds(unsigned terms) {
  Rational sum = 0;
  Rational term = 1;
  for (unsigned j = 0; j <= terms; ++j) {
    if (j > 0) term /= Rational(static_cast<long>(j));
    sum += term;
  }
  return {sum, sum + term / Rational(static_cast<long>(terms))};
}

// Decides e^m >= x.
bool exp_at_least(long m, const Rational& x) {
  if (m == 0) return Rational(1) >= x;
  const unsigned e = static_cast<unsigned>(m > 0 ? m : -m);
  for (unsigned terms = 16;; terms *= 2) {
    auto [lo_e, hi_e] = e_bounds(terms);
    Rational lo, hi;
    if (m > 0) {
      lo = pow(lo_e, e);
      hi = pow(hi_e, e);
    } else {
      lo = Rational(1) / pow(hi_e, e);
      hi = Rational(1) / pow(lo_e, e);
    }
    if (lo >= x) return true;
    if (hi < x) return false;
  }
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text)) throw ParseError("malformed rational '" + std::string(text) + "'");
    return Rational(mpq_class(parse_integer(text)));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(parse_integer(num), d);
  return Rational(std::move(q));
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class ceil(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return out;
}

mpz_class floor(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return out;
}

Rational factorial(unsigned n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return Rational(mpq_class(out));
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(mpq_class(out));
}

RootBounds kth_root_bounds(const Rational& q, unsigned k, unsigned precision_bits) {
  if (k == 0) throw std::invalid_argument("zeroth root");
  if (q.sign() < 0) throw std::domain_error("root of a negative rational");
  if (k == 1) return {q, q, true};

  mpz_class num_root, den_root;
  if (exact_root(q.numerator(), k, num_root) && exact_root(q.denominator(), k, den_root)) {
    Rational r(mpq_class(num_root, den_root));
    return {r, r, true};
  }

  // Z = floor(q * 2^(k*P)); r = floor(Z^(1/k)) gives r^k <= q*2^(kP) < (r+1)^k.
  mpz_class scaled = q.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(k) * precision_bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.denominator().get_mpz_t());
  mpz_class r;
  mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), k);
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), precision_bits);
  return {Rational(mpq_class(r, scale)), Rational(mpq_class(r + 1, scale)), false};
}

long ceil_ln(const Rational& x) {
  if (x.sign() <= 0) throw std::domain_error("logarithm of a nonpositive rational");
  long m = 0;
  if (exp_at_least(0, x)) {
    while (exp_at_least(m - 1, x)) --m;
  } else {
    while (!exp_at_least(m, x)) ++m;
  }
  return m;
}

}  // namespace wcg
