#ifndef PRKIT_COLORINGS_HPP
#define PRKIT_COLORINGS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "prkit/rational.hpp"

namespace prkit {

bool is_prime(std::uint64_t n);

/// x = b * q^l + a * q^(l+1) with 1 <= b <= q-1: b is the rightmost nonzero
/// base-q digit of x and l its position.
struct DigitDecomposition {
  std::uint64_t q = 0;
  std::uint64_t b = 0;
  std::uint64_t l = 0;
  mpz_class a;
};

/// Throws DomainError if x < 1 or q is not prime.
DigitDecomposition base_q_digit_decompose(std::uint64_t q, const mpz_class& x);

/// Exact floor(log2(x)) for x > 0; may be negative.
long long floor_log2(const Rational& x);

/// floor(log2 x) mod 3, as a residue in {0, 1, 2}.
unsigned tau(const Rational& x);

/// x = sum_{t=2}^{m} digits[t-2] / t! with 0 <= digits[t-2] <= t-1 and the
/// last digit positive.
struct FactorialExpansion {
  std::uint64_t m = 0;
  std::vector<std::uint64_t> digits;

  /// a(x, t); zero for t > m.
  std::uint64_t digit(std::uint64_t t) const;
};

/// Greedy expansion of a rational in (0, 1). Throws DomainError otherwise.
FactorialExpansion factorial_expand(const Rational& x);

/// 3-coloring of {1, ..., t-1} with nu(i) != nu(2i mod t) whenever 2i mod t != 0.
struct NuTable {
  std::uint64_t t = 0;
  /// colors[i] for i in [1, t); colors[0] is unused.
  std::vector<std::uint8_t> colors;

  std::uint8_t operator()(std::uint64_t i) const { return colors.at(i); }
};

/// Deterministic construction on the doubling map i -> 2i mod t: every
/// component holds at most one cycle. Cycles are walked from their lowest
/// vertex and colored 0, 1, 0, 1, ... with color 2 closing odd cycles; tree
/// vertices then take the smallest color differing from their image. Tables
/// are memoized.
std::shared_ptr<const NuTable> nu(std::uint64_t t);

/// Parity of the 2-adic valuation of x != 0.
unsigned psi(const Rational& x);

/// Canonical color of a positive rational, refining the pairwise conditions
/// on tau, on x < 1, on m(x) mod 3, and on nu_{m(x)}(a(x, m(x))).
struct PhiColor {
  std::uint8_t tau = 0;
  bool below_one = false;
  std::uint8_t m_mod3 = 0;   // meaningful only when below_one
  std::uint8_t nu_color = 0; // meaningful only when below_one

  friend bool operator==(const PhiColor&, const PhiColor&) = default;
  /// Flat index in [0, 30): tau for x >= 1, else 3 + 9 tau + 3 (m mod 3) + nu.
  unsigned index() const;
};

PhiColor phi(const Rational& x);

/// phi on |x| with negative numbers shifted to a disjoint copy of the palette.
struct PhiPrimeColor {
  bool negative = false;
  PhiColor phi;

  friend bool operator==(const PhiPrimeColor&, const PhiPrimeColor&) = default;
  /// Flat index in [0, 60).
  unsigned index() const { return (negative ? 30u : 0u) + phi.index(); }
};

PhiPrimeColor phi_prime(const Rational& x);

enum class ColorDomain { PositiveIntegers, PositiveRationals, NonzeroRationals };

const char* to_string(ColorDomain d);

/// Total map from a domain to the labels [base, base + palette).
class Coloring {
 public:
  using Rule = std::function<std::size_t(const Rational&)>;

  Coloring(std::string name, ColorDomain domain, std::size_t palette, std::size_t base, Rule rule);
  /// Restricts a positive-integer domain to [1, limit].
  Coloring with_limit(std::uint64_t limit) const;

  const std::string& name() const { return name_; }
  ColorDomain domain() const { return domain_; }
  std::size_t palette() const { return palette_; }
  std::size_t base() const { return base_; }
  bool in_domain(const Rational& x) const;
  /// Throws DomainError outside the domain.
  std::size_t operator()(const Rational& x) const;

 private:
  std::string name_;
  ColorDomain domain_;
  std::size_t palette_;
  std::size_t base_;
  std::uint64_t limit_ = 0;
  Rule rule_;
};

/// Pointwise pair, flattened to (c1 - base1) * palette2 + (c2 - base2).
/// Throws DomainError if the domains differ.
Coloring product_coloring(const Coloring& c1, const Coloring& c2);
/// x -> b(x), labels 1..q-1.
Coloring digit_class_coloring(std::uint64_t q);
Coloring parity_coloring();
Coloring tau_coloring();
Coloring psi_coloring();
Coloring phi_coloring();
Coloring phi_prime_coloring();
/// colors[n - 1] is the color of n; the domain is [1, colors.size()].
Coloring table_coloring(std::vector<std::size_t> colors, std::size_t palette);

/// Ids: "digit:q=<prime>", "tau", "phi", "phiprime", "psi", "parity".
Coloring lookup_coloring(std::string_view id);
std::vector<std::string> coloring_ids();

/// CSV rows "t,i,color" for every t in [2, t_max], with a header line.
std::string nu_tables_csv(std::uint64_t t_max);

}  // namespace prkit

#endif  // PRKIT_COLORINGS_HPP
