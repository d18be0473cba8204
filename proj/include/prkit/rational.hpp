#ifndef PRKIT_RATIONAL_HPP
#define PRKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace prkit {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Backed by GMP; zero is stored as 0/1. Every operation is exact.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  /// Throws DomainError if `den` is zero.
  Rational(const mpz_class& num, const mpz_class& den);
  Rational(long long num, long long den);
  explicit Rational(mpq_class value);

  /// Parses "p", "-p" or "p/q" (base 10). Non-reduced input is reduced.
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  /// Reduced "p/q", or "p" when the denominator is 1.
  std::string str() const;

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  Rational abs() const;
  /// Largest integer not exceeding the value.
  mpz_class floor() const;
  /// max(bit length of |num|, bit length of den); a size measure for pivoting.
  std::size_t bit_size() const;
  std::size_t hash() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  /// Throws DomainError on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// 2-adic valuation of a nonzero integer.
std::size_t two_adic_valuation(const mpz_class& n);

}  // namespace prkit

template <>
struct std::hash<prkit::Rational> {
  std::size_t operator()(const prkit::Rational& r) const noexcept { return r.hash(); }
};

#endif  // PRKIT_RATIONAL_HPP
