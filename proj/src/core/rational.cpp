#include "prkit/rational.hpp"

#include <ostream>

#include "prkit/errors.hpp"

namespace prkit {

Rational::Rational(long long value) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");
  q_ = static_cast<long>(value);
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational::Rational(long long num, long long den)
    : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rational::Rational(mpq_class value) : q_(std::move(value)) {
  if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const std::string_view num_text = text.substr(0, slash);
  if (!digits_ok(num_text, true)) throw ParseError("malformed rational: " + std::string(text));
  mpz_class num;
  std::string num_str(num_text[0] == '+' ? num_text.substr(1) : num_text);
  num.set_str(num_str, 10);
  if (slash == std::string_view::npos) return Rational(num);
  const std::string_view den_text = text.substr(slash + 1);
  if (!digits_ok(den_text, false)) throw ParseError("malformed rational: " + std::string(text));
  mpz_class den(std::string(den_text), 10);
  if (den == 0) throw ParseError("rational with zero denominator: " + std::string(text));
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

std::size_t Rational::bit_size() const {
  const std::size_t n = is_zero() ? 0 : mpz_sizeinbase(q_.get_num_mpz_t(), 2);
  const std::size_t d = mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  return n > d ? n : d;
}

std::size_t Rational::hash() const {
  auto mix = [](std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  };
  std::size_t h = static_cast<std::size_t>(sign() + 1);
  const mpz_srcptr n = q_.get_num_mpz_t();
  const mpz_srcptr d = q_.get_den_mpz_t();
  for (std::size_t i = 0; i < mpz_size(n); ++i) h = mix(h, mpz_getlimbn(n, i));
  h = mix(h, 0x51ed270b27f3ULL);
  for (std::size_t i = 0; i < mpz_size(d); ++i) h = mix(h, mpz_getlimbn(d, i));
  return h;
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::size_t two_adic_valuation(const mpz_class& n) {
  if (n == 0) throw DomainError("2-adic valuation of zero");
  return mpz_scan1(n.get_mpz_t(), 0);
}

}  // namespace prkit
