#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "prkit/colorings.hpp"
#include "prkit/errors.hpp"
#include "support.hpp"

using prkit::Rational;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

// Conditions (1)-(3b) recomputed with the oracle.
bool phi_conditions_hold(const Rational& x, const Rational& y) {
  const auto ox = testing::to_q(x), oy = testing::to_q(y);
  if (oracle::tau(ox) != oracle::tau(oy)) return false;
  if ((ox < 1) != (oy < 1)) return false;
  if (ox < 1) {
    const unsigned mx = oracle::m_of(ox), my = oracle::m_of(oy);
    if (mx % 3 != my % 3) return false;
    if (mx == my) {
      const auto table = prkit::nu(mx);
      if ((*table)(oracle::digit(ox, mx)) != (*table)(oracle::digit(oy, my))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("base-q digit decomposition") {
  auto d = prkit::base_q_digit_decompose(5, 12);
  CHECK(d.b == 2);
  CHECK(d.l == 0);
  CHECK(d.a == 2);
  d = prkit::base_q_digit_decompose(5, 50);
  CHECK(d.b == 2);
  CHECK(d.l == 2);
  CHECK(d.a == 0);
  d = prkit::base_q_digit_decompose(5, 125);
  CHECK(d.b == 1);
  CHECK(d.l == 3);
  CHECK_THROWS_AS(prkit::base_q_digit_decompose(5, 0), prkit::DomainError);
  CHECK_THROWS_AS(prkit::base_q_digit_decompose(6, 7), prkit::DomainError);
}

TEST_CASE("digit decomposition round trip against the oracle") {
  std::mt19937_64 rng(5);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 97};
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t q = primes[rng() % 7];
    const std::uint64_t x = 1 + rng() % 100'000'000;
    const auto d = prkit::base_q_digit_decompose(q, mpz_class(static_cast<unsigned long>(x)));
    mpz_class ql, back;
    mpz_ui_pow_ui(ql.get_mpz_t(), q, d.l);
    back = d.b * ql + d.a * ql * q;
    REQUIRE(back == static_cast<unsigned long>(x));
    const auto [b, l] = oracle::low_digit(q, x);
    REQUIRE(d.b == b);
    REQUIRE(d.l == l);
  }
}

TEST_CASE("tau and floor log2") {
  CHECK(prkit::tau(r(1)) == 0);
  CHECK(prkit::tau(r(5)) == 2);
  CHECK(prkit::tau(r(1, 3)) == 1);
  CHECK(prkit::floor_log2(r(1, 3)) == -2);
  CHECK(prkit::floor_log2(r(8)) == 3);
  CHECK(prkit::floor_log2(r(7, 8)) == -1);
  CHECK_THROWS_AS(prkit::tau(r(0)), prkit::DomainError);
  for (long long p = 1; p <= 40; ++p)
    for (long long q = 1; q <= 40; ++q) CHECK(prkit::tau(r(p, q)) == oracle::tau(oracle::q(p, q)));
}

TEST_CASE("factorial expansion") {
  auto e = prkit::factorial_expand(r(1, 2));
  CHECK(e.m == 2);
  CHECK(e.digits == std::vector<std::uint64_t>{1});
  e = prkit::factorial_expand(r(5, 8));
  CHECK(e.m == 4);
  CHECK(e.digits == std::vector<std::uint64_t>{1, 0, 3});
  e = prkit::factorial_expand(r(1, 6));
  CHECK(e.m == 3);
  CHECK(e.digits == std::vector<std::uint64_t>{0, 1});
  CHECK(e.digit(9) == 0);
  CHECK_THROWS_AS(prkit::factorial_expand(r(1)), prkit::DomainError);
  CHECK_THROWS_AS(prkit::factorial_expand(r(-1, 2)), prkit::DomainError);
}

TEST_CASE("factorial expansion for every denominator dividing 8!") {
  const long long F = 40320;
  for (long long k = 1; k < F; ++k) {
    const Rational x(k, F);
    const auto e = prkit::factorial_expand(x);
    const auto ox = testing::to_q(x);
    REQUIRE(e.m == oracle::m_of(ox));
    Rational back = 0;
    mpz_class fact = 1;
    for (std::uint64_t t = 2; t <= e.m; ++t) {
      fact *= t;
      const auto a = e.digit(t);
      REQUIRE(a <= t - 1);
      REQUIRE(a == oracle::digit(ox, static_cast<unsigned>(t)));
      back += Rational(mpz_class(static_cast<unsigned long>(a)), fact);
    }
    REQUIRE(e.digit(e.m) > 0);
    REQUIRE(back == x);
  }
}

TEST_CASE("nu tables") {
  const auto t3 = prkit::nu(3);
  CHECK((*t3)(1) != (*t3)(2));
  const auto t5 = prkit::nu(5);
  for (std::uint64_t i : {1, 2, 4, 3}) CHECK((*t5)(i) != (*t5)(2 * i % 5));
  CHECK(prkit::nu(2)->colors.size() == 2);
  CHECK(prkit::nu(7).get() == prkit::nu(7).get());
  for (std::uint64_t t = 2; t <= 1000; ++t) {
    const auto table = prkit::nu(t);
    for (std::uint64_t i = 1; i < t; ++i) {
      REQUIRE((*table)(i) < 3);
      const std::uint64_t j = 2 * i % t;
      if (j != 0) REQUIRE((*table)(i) != (*table)(j));
    }
  }
}

TEST_CASE("nu CSV export") {
  const auto csv = prkit::nu_tables_csv(4);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,i,color");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 2 + 3);
}

TEST_CASE("psi") {
  CHECK(prkit::psi(r(1)) == 0);
  CHECK(prkit::psi(r(2)) == 1);
  CHECK(prkit::psi(r(3, 2)) == 1);
  for (const auto& x : {r(1), r(3), r(5, 4), r(-7, 6)}) CHECK(prkit::psi(x * 2) != prkit::psi(x));
  CHECK_THROWS_AS(prkit::psi(r(0)), prkit::DomainError);
  for (long long p = -30; p <= 30; ++p)
    for (long long q = 1; q <= 30; ++q)
      if (p != 0) CHECK(prkit::psi(r(p, q)) == oracle::psi(oracle::q(p, q)));
}

TEST_CASE("phi") {
  CHECK(prkit::phi(r(2)) == prkit::phi(r(3)));
  CHECK(prkit::phi(r(1, 2)) != prkit::phi(r(1, 3)));
  CHECK(prkit::phi(r(1, 2)).tau == 2);
  std::set<unsigned> seen;
  for (long long p = 1; p <= 120; ++p)
    for (long long q = 1; q <= 120; ++q) {
      const auto c = prkit::phi(r(p, q));
      CHECK(c.index() < 30);
      seen.insert(c.index());
    }
  CHECK(seen.size() <= 30);
  CHECK_THROWS_AS(prkit::phi(r(-1)), prkit::DomainError);
}

TEST_CASE("phi equal colors imply the defining conditions") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> h(1, 720);
  int pairs = 0;
  while (pairs < 10000) {
    const Rational x(h(rng), h(rng));
    const Rational y(h(rng), h(rng));
    if (prkit::phi(x) != prkit::phi(y)) continue;
    ++pairs;
    REQUIRE(phi_conditions_hold(x, y));
  }
}

TEST_CASE("phi prime") {
  CHECK(prkit::phi_prime(r(-2)) != prkit::phi_prime(r(2)));
  CHECK(prkit::phi_prime(r(-1, 2)) == prkit::phi_prime(r(-1, 2)));
  for (long long p = 1; p <= 30; ++p)
    for (long long q = 1; q <= 30; ++q) {
      CHECK((prkit::phi_prime(r(p, q)) == prkit::phi_prime(r(q, p))) ==
            (prkit::phi(r(p, q)) == prkit::phi(r(q, p))));
      CHECK(prkit::phi_prime(r(-p, q)).index() >= 30);
    }
  CHECK_THROWS_AS(prkit::phi_prime(r(0)), prkit::DomainError);
}

TEST_CASE("coloring objects") {
  const auto digit = prkit::digit_class_coloring(5);
  CHECK(digit(12) == 2);
  CHECK(digit.palette() == 4);
  CHECK_THROWS_AS(digit(r(1, 2)), prkit::DomainError);
  const auto prod = prkit::product_coloring(prkit::parity_coloring(), prkit::table_coloring({0, 1, 2}, 3));
  CHECK(prod.palette() == 6);
  CHECK_THROWS_AS(prkit::product_coloring(prkit::parity_coloring(), prkit::psi_coloring()), prkit::DomainError);
  const auto table = prkit::table_coloring({0, 1, 1, 0}, 2);
  CHECK(table(4) == 0);
  CHECK_THROWS_AS(table(5), prkit::DomainError);
  CHECK(prkit::lookup_coloring("digit:q=5")(50) == 2);
  CHECK(prkit::lookup_coloring("tau")(r(1, 3)) == 1);
  CHECK(prkit::lookup_coloring("psi")(r(3, 2)) == 1);
  CHECK(prkit::lookup_coloring("phiprime").palette() == 60);
  CHECK_THROWS_AS(prkit::lookup_coloring("digit:q=x"), prkit::UnknownIdError);
  CHECK_THROWS_AS(prkit::lookup_coloring("plaid"), prkit::UnknownIdError);
}
