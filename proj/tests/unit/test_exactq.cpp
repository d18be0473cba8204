#include <doctest.h>

#include <random>

#include "prkit/errors.hpp"
#include "prkit/linalg.hpp"
#include "prkit/systems.hpp"
#include "support.hpp"

using prkit::FiniteMatrix;
using prkit::Rational;
using prkit::RatVector;

TEST_CASE("rational normal form and parsing") {
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("7").is_integer());
  CHECK_THROWS_AS(Rational::parse("1/0"), prkit::ParseError);
  CHECK_THROWS_AS(Rational(1, 0), prkit::DomainError);
  CHECK_THROWS_AS(Rational::parse("x"), prkit::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), prkit::ParseError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), prkit::DomainError);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).abs() == Rational(7, 2));
  CHECK(prkit::two_adic_valuation(mpz_class(48)) == 4);
}

TEST_CASE("rational round trips are exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-1'000'000, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Rational a(mpz_class(std::to_string(d(rng))), mpz_class(std::to_string(d(rng) | 1)));
    Rational b(mpz_class(std::to_string(d(rng))), mpz_class(std::to_string(d(rng) | 1)));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    CHECK(Rational::parse(a.str()) == a);
    CHECK(testing::to_q(a + b) == testing::to_q(a) + testing::to_q(b));
  }
}

TEST_CASE("span membership") {
  const std::vector<RatVector> one{{1}, {-1}};
  auto c = prkit::span_membership(one, RatVector{2});
  REQUIRE(c);
  CHECK((*c)[0] * 1 + (*c)[1] * -1 == 2);

  CHECK(prkit::span_membership({}, RatVector{0, 0}) == std::vector<Rational>{});
  CHECK_FALSE(prkit::span_membership({}, RatVector{0, 1}));

  const std::vector<RatVector> two{{1, 1}, {1, 0}};
  CHECK(prkit::span_membership(two, RatVector{0, 3}) == std::vector<Rational>{3, -3});

  const std::vector<RatVector> line{{1, 2}};
  CHECK_FALSE(prkit::span_membership(line, RatVector{1, 1}));
  CHECK_THROWS_AS(prkit::span_membership(line, RatVector{1}), prkit::DimensionError);
}

TEST_CASE("span membership reproduces the target") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_matrix(rng, 4, 3, 3, 3);
    std::vector<RatVector> basis;
    for (std::size_t j = 0; j < m.cols(); ++j) basis.push_back(m.column(j));
    const auto t = testing::random_matrix(rng, 4, 1, 3).column(0);
    const auto in = m.column(0).scaled(Rational(1, 2)) + m.column(2);
    for (const auto& target : {t, in}) {
      auto c = prkit::span_membership(basis, target);
      std::vector<std::vector<oracle::Q>> ob;
      for (const auto& b : basis) ob.push_back(testing::to_oracle(FiniteMatrix::from_rows({b.values()}))[0]);
      CHECK(c.has_value() == oracle::in_span(ob, testing::to_oracle(FiniteMatrix::from_rows({target.values()}))[0]));
      if (c) {
        RatVector sum(target.size());
        for (std::size_t i = 0; i < basis.size(); ++i) sum.add_scaled((*c)[i], basis[i]);
        CHECK(sum == target);
      }
    }
  }
}

TEST_CASE("kernel basis") {
  const auto k = prkit::kernel_basis(prkit::schur());
  REQUIRE(k.size() == 2);
  CHECK(k[0] == RatVector{-1, 1, 0});
  CHECK(k[1] == RatVector{1, 0, 1});
  CHECK(prkit::kernel_basis(FiniteMatrix{{1, 0}, {0, 1}}).empty());
  CHECK(prkit::kernel_basis(FiniteMatrix(1, 2)).size() == 2);
}

TEST_CASE("rank-nullity against the oracle on random matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 6;
    const auto m = testing::random_matrix(rng, rows, cols, trial % 3 == 0 ? 1 : 4, 1 + trial % 3);
    const auto basis = prkit::kernel_basis(m);
    for (const auto& v : basis) CHECK(m.apply(v).is_zero());
    const std::size_t r = oracle::rank(testing::to_oracle(m));
    CHECK(prkit::rank(m) == r);
    CHECK(basis.size() + r == cols);
    if (!basis.empty()) {
      FiniteMatrix b(basis.size(), cols);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) b(i, j) = basis[i][j];
      CHECK(oracle::rank(testing::to_oracle(b)) == basis.size());
    }
  }
}

TEST_CASE("column sums") {
  const std::vector<std::size_t> schur_cols{0, 2};
  CHECK(prkit::column_sum(prkit::schur(), schur_cols) == RatVector{0});
  CHECK(prkit::column_sum(prkit::schur(), {}) == RatVector{0});
  const std::vector<std::size_t> vdw_cols{1, 2, 3};
  CHECK(prkit::column_sum(prkit::vdw(3), vdw_cols) == RatVector{0, 0});
  const std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(prkit::column_sum(prkit::schur(), bad), prkit::DimensionError);
}

TEST_CASE("matrix shape checks") {
  CHECK_THROWS_AS(FiniteMatrix(0, 2), prkit::DimensionError);
  CHECK_THROWS_AS(FiniteMatrix::from_rows({{1, 2}, {3}}), prkit::DimensionError);
  CHECK_THROWS_AS(FiniteMatrix(1, 1).at(1, 0), prkit::DimensionError);
}

TEST_CASE("incremental span residues are canonical") {
  prkit::IncrementalSpan s(3);
  CHECK(s.insert(RatVector{1, 1, 0}));
  CHECK_FALSE(s.insert(RatVector{2, 2, 0}));
  CHECK(s.contains(RatVector{-3, -3, 0}));
  CHECK(s.residue(RatVector{1, 0, 0}) == s.residue(RatVector{0, -1, 0}));
}
