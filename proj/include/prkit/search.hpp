#ifndef PRKIT_SEARCH_HPP
#define PRKIT_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prkit/colorings.hpp"
#include "prkit/linalg.hpp"

namespace prkit {

enum class OutcomeKind { Solution, AvoidingColoring, Exhausted };

const char* to_string(OutcomeKind kind);

/// Limits for a search. `N` bounds integer domains [1, N]; `H` bounds the
/// height max(|num|, den) of rationals.
struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  std::uint64_t max_millis = 600'000;
  std::int64_t N = 100;
  std::int64_t H = 64;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  double millis = 0;
};

/// Result of a solution or coloring search.
///
/// Solution: `assignment` solves the system and is monochromatic.
/// AvoidingColoring: `coloring[n-1]` colors n on [1, coloring.size()] with no
/// monochromatic solution. Exhausted: nothing found; for forcing runs
/// `forcing_number` is set and `coloring` holds the longest avoiding coloring.
/// `complete` is false when a budget cut the search short.
struct SearchOutcome {
  OutcomeKind kind = OutcomeKind::Exhausted;
  std::vector<Rational> assignment;
  std::vector<std::size_t> coloring;
  std::optional<std::uint64_t> forcing_number;
  bool complete = true;
  SearchStats stats;
};

/// Exact check that x > 0 solves m x = 0 with all entries of one color.
bool is_monochromatic_solution(const FiniteMatrix& m, const Coloring& c, std::span<const Rational> x);

/// Searches [1, N]^v for a monochromatic positive integer solution.
///
/// Colors are tried in palette order; within a color the free variables of
/// the canonical kernel parametrization run over that color class in
/// increasing lexicographic order and the pivot variables are solved for.
/// A found solution is re-verified before it is returned.
SearchOutcome find_mono_solution(const FiniteMatrix& m, const Coloring& coloring, const SearchBudget& budget);

struct ForcingOptions {
  unsigned threads = 1;
};

/// Smallest N <= cap such that every k-coloring of [1, N] has a monochromatic
/// solution (kind Exhausted), or the lexicographically least avoiding
/// coloring of [1, cap] (kind AvoidingColoring).
///
/// Colors are assigned to 1, 2, ... in order as restricted-growth strings
/// (1 gets color 0, a new color is only the next unused one). The tree is cut
/// into fixed prefixes that run in parallel; the merge follows prefix order,
/// so results and node counts do not depend on the thread count.
///
/// The cap is approached by doubling from 8. If the solutions below some
/// intermediate cap are too many to store, the avoiding coloring of the last
/// completed round is returned with `complete` false.
SearchOutcome forcing_number(const FiniteMatrix& m, unsigned k, std::uint64_t cap,
                             const ForcingOptions& opts = {});

/// Assignment with every variable in `cls` (pairwise distinct if requested),
/// first in lexicographic order of the free variables, or nullopt.
std::optional<std::vector<std::int64_t>> solution_in_class(const FiniteMatrix& m,
                                                           std::span<const std::int64_t> cls,
                                                           bool distinct = false);

/// forcing_number on the first M+1 equations 2x_n + sum x_j = y_n.
/// Requires M <= 2 and 1 <= k <= 2.
SearchOutcome truncation_forcing_demo(unsigned M, unsigned k, std::uint64_t cap,
                                      const ForcingOptions& opts = {});

enum class BlockingProperty { TauGap, ChainStep, CarryBlocking };

const char* to_string(BlockingProperty p);
/// "tau-gap", "chain-step", "carry-blocking"; throws UnknownIdError.
BlockingProperty parse_blocking_property(std::string_view id);

struct BlockingReport {
  BlockingProperty property = BlockingProperty::TauGap;
  std::uint64_t bound = 0;
  std::optional<std::vector<Rational>> counterexample;
  std::uint64_t checked = 0;
};

/// Exhaustive scans for the statements behind the chain-blocking coloring:
///  - tau-gap, heights <= H: tau(x) = tau(y) and y >= 2x imply y > 4x;
///  - chain-step, heights <= H: y = x + 2x' with phi(y) = phi(x') implies x > 2x';
///  - carry-blocking, denominators dividing B!: no x, x' in (0,1) with
///    y = x + 2x' < 1, m(x') > m(x) and phi(x) = phi(x') = phi(y).
/// Returns the first violating tuple in scan order, if any.
BlockingReport blocking_counterexample_search(BlockingProperty property, std::uint64_t bound);

/// All positive rationals with max(num, den) <= H, increasing.
std::vector<Rational> rationals_up_to_height(std::uint64_t H);

/// Randomized check of one coloring property with a seeded generator.
/// Properties: "digit-roundtrip", "tau-gap", "psi-doubling", "phi-soundness".
struct PropertySample {
  std::string property;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures = 0;
  std::optional<std::vector<Rational>> first_failure;
};

PropertySample sample_property(std::string_view property, std::uint64_t samples, std::uint64_t seed);

}  // namespace prkit

#endif  // PRKIT_SEARCH_HPP
