#ifndef PRKIT_REGULARITY_HPP
#define PRKIT_REGULARITY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "prkit/linalg.hpp"
#include "prkit/systems.hpp"

namespace prkit {

/// Ordered partition I_0, ..., I_{m-1} of the column indices with
/// sum_{I_0} c_i = 0 and, for t >= 1, sum_{I_t} c_i expressed through the
/// columns of the earlier blocks.
///
/// `witnesses[t-1]` holds one coefficient per column of I_0 u ... u I_{t-1},
/// listed in increasing column order.
struct ColumnsPropertyCertificate {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<Rational>> witnesses;

  friend bool operator==(const ColumnsPropertyCertificate&, const ColumnsPropertyCertificate&) = default;
};

struct ColumnsPropertyOptions {
  std::size_t max_columns = 16;
};

/// Searches for a columns-property certificate.
///
/// I_0 is the smallest zero-sum set of columns (lexicographically first among
/// equals), found by meet-in-the-middle. Later blocks are absorbed greedily: all
/// columns already in the accumulated span if any, otherwise the smallest set
/// of remaining columns whose sum lies in the span. Greedy absorption is
/// complete: if any certificate exists, the blocks of that certificate that are
/// not yet absorbed always leave some non-empty remaining set whose sum lies in
/// the current span, so a stuck state proves that no certificate exists.
///
/// Throws CapacityError when the matrix has more than `max_columns` columns.
std::optional<ColumnsPropertyCertificate> columns_property(const FiniteMatrix& m,
                                                           const ColumnsPropertyOptions& opts = {});

/// True iff the blocks partition the columns into non-empty sets and both
/// conditions hold exactly.
bool verify_certificate(const FiniteMatrix& m, const ColumnsPropertyCertificate& cert);

struct RegularityVerdict {
  bool regular = false;
  std::optional<ColumnsPropertyCertificate> certificate;
};

/// Rado: a finite rational matrix is partition regular iff it has the
/// columns property.
RegularityVerdict is_partition_regular(const FiniteMatrix& m, const ColumnsPropertyOptions& opts = {});

/// Non-empty set of at most `max_size` columns summing to zero.
///
/// The answer minimizes its smallest index, then its size, then compares
/// lexicographically. A max_size of 0 means no limit.
std::optional<std::vector<std::size_t>> zero_column_subset(const FiniteMatrix& m, std::size_t max_size = 0);

/// Same question over the first `cols_per_block` columns of every block of an
/// infinite view, using full column supports (not a row truncation).
/// Columns are ordered block-major.
std::optional<std::vector<ColumnRef>> zero_column_subset(const InfiniteMatrixView& m,
                                                         std::uint64_t cols_per_block,
                                                         std::size_t max_size = 0);

/// Row sums of absolute values: every row of a finite matrix, or a prefix of
/// the closed-form sums of an infinite view together with its declared
/// supremum.
struct RowSumProfile {
  std::vector<Rational> row_sums;
  bool complete = false;
  std::optional<Rational> bound;
};

RowSumProfile row_sum_profile(const FiniteMatrix& m);
RowSumProfile row_sum_profile(const InfiniteMatrixView& m, std::uint64_t probe_rows = 64);

struct RowSumReport {
  bool bounded = false;
  std::optional<Rational> bound;
  /// For unbounded profiles: rows whose sums strictly increase.
  std::vector<std::pair<std::uint64_t, Rational>> growth_witness;
};

/// Throws PreconditionError if a declared bound is exceeded by a probed row,
/// or if an unbounded profile shows no growth.
RowSumReport bounded_row_sums(const RowSumProfile& profile);

/// Smallest prime q exceeding every row sum of absolute values.
/// Throws PreconditionError for non-integer entries or unbounded rows.
std::uint64_t smallest_admissible_prime(const FiniteMatrix& m);
std::uint64_t smallest_admissible_prime(const InfiniteMatrixView& m, std::uint64_t probe_rows = 16);

/// Given a positive kernel vector whose entries share their rightmost nonzero
/// base-q digit, returns J = {j : l(x_j) minimal}. The columns in J sum to zero.
/// Throws PreconditionError if x is not positive, not in the kernel, not
/// monochromatic, or q is not admissible.
std::vector<std::size_t> extract_zero_subset_from_solution(const FiniteMatrix& m, std::uint64_t q,
                                                           std::span<const mpz_class> x);

}  // namespace prkit

#endif  // PRKIT_REGULARITY_HPP
