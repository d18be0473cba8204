#include <doctest.h>

#include <numeric>

#include "prkit/colorings.hpp"
#include "prkit/errors.hpp"
#include "prkit/search.hpp"
#include "prkit/systems.hpp"
#include "support.hpp"

using prkit::FiniteMatrix;
using prkit::OutcomeKind;
using prkit::Rational;

namespace {

prkit::SearchBudget budget_n(std::int64_t n) {
  prkit::SearchBudget b;
  b.N = n;
  return b;
}

std::vector<int> as_ints(const std::vector<std::size_t>& c) { return {c.begin(), c.end()}; }

// Value sets of 2x0 + x1 = y0, 2x1 + x2 + x3 = y1 in [1, n], enumerated from
// the x's directly.
std::vector<std::vector<std::int64_t>> two_row_sets(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> sols;
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t b = 1; b <= n; ++b) {
      const std::int64_t y0 = 2 * a + b;
      if (y0 > n) break;
      for (std::int64_t c = 1; c <= n; ++c)
        for (std::int64_t d = 1; d <= n; ++d) {
          const std::int64_t y1 = 2 * b + c + d;
          if (y1 > n) break;
          sols.push_back({a, b, c, d, y0, y1});
        }
    }
  return oracle::value_sets(sols);
}

}  // namespace

TEST_CASE("monochromatic solutions") {
  const auto parity = prkit::find_mono_solution(prkit::schur(), prkit::parity_coloring(), budget_n(10));
  REQUIRE(parity.kind == OutcomeKind::Solution);
  CHECK(parity.assignment == std::vector<Rational>{2, 2, 4});

  const auto avoid = prkit::table_coloring({0, 1, 1, 0}, 2);
  const auto none = prkit::find_mono_solution(prkit::schur(), avoid, budget_n(4));
  CHECK(none.kind == OutcomeKind::Exhausted);
  CHECK(none.complete);

  const auto constant = prkit::table_coloring(std::vector<std::size_t>(10, 0), 1);
  const auto ap = prkit::find_mono_solution(prkit::vdw(3), constant, budget_n(10));
  REQUIRE(ap.kind == OutcomeKind::Solution);
  CHECK(prkit::is_monochromatic_solution(prkit::vdw(3), constant, ap.assignment));
  CHECK(ap.assignment == std::vector<Rational>{1, 1, 2, 3});

  CHECK_FALSE(prkit::is_monochromatic_solution(prkit::schur(), prkit::parity_coloring(),
                                               std::vector<Rational>{1, 1, 2}));
}

TEST_CASE("monochromatic search agrees with brute force") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::size_t> colors(12);
    for (auto& c : colors) c = rng() % 2;
    const auto coloring = prkit::table_coloring(colors, 2);
    for (const auto& m : {prkit::schur(), prkit::vdw(3), FiniteMatrix{{2, 1, -1}}}) {
      const auto sets = oracle::value_sets(oracle::solutions_in_box(testing::to_int(m), 12));
      const auto out = prkit::find_mono_solution(m, coloring, budget_n(12));
      std::vector<int> c(colors.begin(), colors.end());
      CHECK((out.kind == OutcomeKind::Solution) == oracle::has_mono(sets, c));
      if (out.kind == OutcomeKind::Solution) CHECK(prkit::is_monochromatic_solution(m, coloring, out.assignment));
    }
  }
}

TEST_CASE("node budget cuts the search short") {
  auto b = budget_n(2000);
  b.max_nodes = 1;
  const auto out = prkit::find_mono_solution(FiniteMatrix{{1, 1}}, prkit::parity_coloring(), b);
  CHECK(out.kind == OutcomeKind::Exhausted);
  CHECK_FALSE(out.complete);
}

TEST_CASE("forcing numbers") {
  const auto s2 = prkit::forcing_number(prkit::schur(), 2, 10);
  CHECK(s2.kind == OutcomeKind::Exhausted);
  CHECK(s2.forcing_number == 5u);
  CHECK(s2.coloring == std::vector<std::size_t>{0, 1, 1, 0});

  CHECK(prkit::forcing_number(prkit::schur(), 1, 10).forcing_number == 2u);

  const auto never = prkit::forcing_number(FiniteMatrix{{1, 1}}, 1, 40);
  CHECK(never.kind == OutcomeKind::AvoidingColoring);
  CHECK(never.coloring.size() == 40);
  CHECK_FALSE(never.forcing_number);

  CHECK_THROWS_AS(prkit::forcing_number(prkit::schur(), 0, 10), prkit::PreconditionError);
}

TEST_CASE("forcing numbers agree with trying every coloring") {
  const std::vector<FiniteMatrix> systems{prkit::schur(), FiniteMatrix{{2, 1, -1}}, FiniteMatrix{{1, 2, -1}},
                                          FiniteMatrix{{1, -1, 3}}, prkit::vdw(3)};
  for (const auto& m : systems) {
    const auto sets = oracle::value_sets(oracle::solutions_in_box(testing::to_int(m), 14));
    for (int k = 1; k <= 2; ++k) {
      const auto expected = oracle::forcing_brute(sets, k, 14);
      const auto got = prkit::forcing_number(m, k, 14);
      if (expected) {
        CHECK(got.kind == OutcomeKind::Exhausted);
        CHECK(got.forcing_number == static_cast<std::uint64_t>(*expected));
      } else {
        CHECK(got.kind == OutcomeKind::AvoidingColoring);
      }
    }
  }
}

TEST_CASE("avoiding certificates survive exhaustive re-checks") {
  const std::vector<FiniteMatrix> systems{prkit::schur(), FiniteMatrix{{1, 1, -3}}, FiniteMatrix{{2, 2, -1}},
                                          FiniteMatrix{{3, -1, -1}}};
  for (const auto& m : systems) {
    const auto out = prkit::forcing_number(m, 2, 30);
    const auto n = static_cast<std::int64_t>(out.coloring.size());
    REQUIRE(n <= 30);
    const auto sets = oracle::value_sets(oracle::solutions_in_box(testing::to_int(m), n));
    CHECK_FALSE(oracle::has_mono(sets, as_ints(out.coloring)));
    // Forced at N means forced beyond N: every one-step extension fails.
    if (out.forcing_number) {
      const auto next = oracle::value_sets(oracle::solutions_in_box(testing::to_int(m), n + 1));
      CHECK(oracle::longest_avoiding(next, 2, n + 1) == n);
    }
  }
}

TEST_CASE("forcing results do not depend on the thread count") {
  for (const auto& m : {prkit::schur(), prkit::vdw(3), prkit::sec2_truncation(1)}) {
    const auto one = prkit::forcing_number(m, 2, 64, {1});
    for (unsigned t : {2u, 4u, 7u}) {
      const auto many = prkit::forcing_number(m, 2, 64, {t});
      CHECK(many.kind == one.kind);
      CHECK(many.coloring == one.coloring);
      CHECK(many.forcing_number == one.forcing_number);
      CHECK(many.stats.nodes == one.stats.nodes);
    }
  }
  const auto k3 = prkit::forcing_number(prkit::schur(), 3, 20, {1});
  const auto k3p = prkit::forcing_number(prkit::schur(), 3, 20, {4});
  CHECK(k3.coloring == k3p.coloring);
  CHECK(k3.stats.nodes == k3p.stats.nodes);
}

TEST_CASE("solutions inside a class") {
  const FiniteMatrix row0{{2, 1, -1}};
  std::vector<std::int64_t> threes;
  for (std::int64_t v = 3; v <= 30; v += 3) threes.push_back(v);
  CHECK(prkit::solution_in_class(row0, threes) == std::vector<std::int64_t>{3, 3, 9});
  CHECK_FALSE(prkit::solution_in_class(row0, std::vector<std::int64_t>{1, 2}));

  const auto two = prkit::sec2_truncation(1);
  std::vector<std::int64_t> upto20(20);
  std::iota(upto20.begin(), upto20.end(), 1);
  const auto sol = prkit::solution_in_class(two, upto20);
  REQUIRE(sol);
  std::vector<Rational> x(sol->begin(), sol->end());
  CHECK(two.apply(prkit::RatVector(x)).is_zero());
  CHECK(*sol == std::vector<std::int64_t>{1, 1, 1, 1, 3, 4});

  const auto distinct = prkit::solution_in_class(prkit::schur(), upto20, true);
  REQUIRE(distinct);
  CHECK((*distinct)[0] != (*distinct)[1]);
  CHECK_THROWS_AS(prkit::solution_in_class(row0, std::vector<std::int64_t>{}), prkit::PreconditionError);
}

TEST_CASE("truncation forcing demo") {
  const auto k1 = prkit::truncation_forcing_demo(0, 1, 5);
  CHECK(k1.forcing_number == 3u);

  // Frozen after agreeing with the oracles below.
  const auto m0 = prkit::truncation_forcing_demo(0, 2, 200);
  CHECK(m0.forcing_number == 11u);
  const auto sets0 = oracle::value_sets(oracle::solutions_in_box({{2, 1, -1}}, 12));
  CHECK(oracle::forcing_brute(sets0, 2, 12) == 11);

  const auto m1 = prkit::truncation_forcing_demo(1, 2, 200);
  CHECK(m1.forcing_number == 25u);
  CHECK(oracle::longest_avoiding(two_row_sets(30), 2, 30) == 24);

  CHECK_THROWS_AS(prkit::truncation_forcing_demo(3, 2, 10), prkit::PreconditionError);
  CHECK_THROWS_AS(prkit::truncation_forcing_demo(0, 3, 10), prkit::PreconditionError);
}

TEST_CASE("blocking scans at small bounds") {
  CHECK(prkit::rationals_up_to_height(3) ==
        std::vector<Rational>{Rational(1, 3), Rational(1, 2), Rational(2, 3), 1, Rational(3, 2), 2, 3});
  for (auto p : {prkit::BlockingProperty::TauGap, prkit::BlockingProperty::ChainStep}) {
    const auto rep = prkit::blocking_counterexample_search(p, 24);
    CHECK_FALSE(rep.counterexample);
    CHECK(rep.checked > 0);
  }
  CHECK_FALSE(prkit::blocking_counterexample_search(prkit::BlockingProperty::CarryBlocking, 6).counterexample);
  CHECK(prkit::parse_blocking_property("chain-step") == prkit::BlockingProperty::ChainStep);
  CHECK_THROWS_AS(prkit::parse_blocking_property("nope"), prkit::UnknownIdError);
}

TEST_CASE("chain step lemma needs only tau") {
  const auto values = prkit::rationals_up_to_height(12);
  for (const auto& x : values)
    for (const auto& xp : values) {
      const Rational y = x + xp * 2;
      if (prkit::tau(y) == prkit::tau(xp)) CHECK(x > xp * 2);
    }
}

TEST_CASE("property sampling is seeded") {
  for (const char* p : {"digit-roundtrip", "tau-gap", "psi-doubling", "phi-soundness"}) {
    const auto a = prkit::sample_property(p, 2000, 42);
    const auto b = prkit::sample_property(p, 2000, 42);
    CHECK(a.failures == 0);
    CHECK(a.first_failure == b.first_failure);
  }
  CHECK_THROWS_AS(prkit::sample_property("nope", 1, 1), prkit::UnknownIdError);
}
