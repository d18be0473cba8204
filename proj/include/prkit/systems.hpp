#ifndef PRKIT_SYSTEMS_HPP
#define PRKIT_SYSTEMS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prkit/linalg.hpp"

namespace prkit {

/// Column of an infinite matrix. Matrices indexed by omega use block 0 only;
/// augmented matrices (A -I) put A's columns in block 0 and -I in block 1.
struct ColumnRef {
  unsigned block = 0;
  std::uint64_t index = 0;
  friend auto operator<=>(const ColumnRef&, const ColumnRef&) = default;
};

struct ColumnEntry {
  std::uint64_t row;
  Rational value;
};

struct RowEntry {
  ColumnRef column;
  Rational value;
};

/// An omega-row matrix given by closed-form rules, never materialized.
///
/// Every column and every row has finite support. `row_abs_sum` gives the sum
/// of absolute values of a row in closed form (rows of (A -I) grow like 2^n and
/// are not enumerated for that). `row_abs_sum_sup`, when set, is the declared
/// supremum of all row sums; unset means the generator knows them unbounded.
class InfiniteMatrixView {
 public:
  struct Rules {
    std::string name;
    unsigned blocks = 1;
    std::function<Rational(std::uint64_t, ColumnRef)> entry;
    std::function<std::vector<ColumnEntry>(ColumnRef)> column;
    std::function<std::vector<RowEntry>(std::uint64_t)> row;
    std::function<Rational(std::uint64_t)> row_abs_sum;
    std::optional<Rational> row_abs_sum_sup;
    std::function<std::string(ColumnRef)> label;
  };

  explicit InfiniteMatrixView(Rules rules);

  const std::string& name() const { return r_.name; }
  unsigned blocks() const { return r_.blocks; }
  Rational entry(std::uint64_t row, ColumnRef col) const;
  /// Full support of a column, sorted by row.
  std::vector<ColumnEntry> column(ColumnRef col) const;
  /// Full support of a row, sorted by (block, index).
  std::vector<RowEntry> row(std::uint64_t i) const;
  Rational row_abs_sum(std::uint64_t i) const { return r_.row_abs_sum(i); }
  const std::optional<Rational>& row_abs_sum_sup() const { return r_.row_abs_sum_sup; }
  std::string label(ColumnRef col) const { return r_.label(col); }

 private:
  void check_block(ColumnRef col) const;
  Rules r_;
};

/// A named system A x = 0 with its variable labels.
struct SystemSpec {
  std::string id;
  std::string description;
  std::variant<FiniteMatrix, InfiniteMatrixView> matrix;
  /// One label per column for finite systems; empty for infinite views,
  /// which label columns themselves.
  std::vector<std::string> labels;

  bool is_finite() const { return std::holds_alternative<FiniteMatrix>(matrix); }
  const FiniteMatrix& finite() const;
  const InfiniteMatrixView& infinite() const;
};

/// x + y = z, the 1x3 matrix (1, 1, -1).
FiniteMatrix schur();
/// The (m-1) x (m+1) matrix for m-term progressions with common difference
/// d in column 0: variables (d, a, a+d, ..., a+(m-1)d). Requires m >= 2.
FiniteMatrix vdw(unsigned m);
/// Finite sums of x_1..x_m: one row sum_{i in F} x_i - y_F = 0 per subset F
/// with |F| >= 2, ordered by size then lexicographically. Requires 1 <= m <= 10.
FiniteMatrix folkman(unsigned m);
std::vector<std::string> folkman_labels(unsigned m);

/// a(i,j) = 2 if j = i, 1 if 2^i <= j < 2^(i+1), 0 otherwise.
InfiniteMatrixView infinite_A();
/// (A -I): block 0 holds a's columns (labels x_j), block 1 holds -I (labels y_j).
/// Requires a single-block input.
InfiniteMatrixView augment_neg_identity(const InfiniteMatrixView& a);
/// x_n - x_{n+1} = y_n with columns interleaved x0, y0, x1, y1, ...
InfiniteMatrixView chain_minus();
/// x_n + 2 x_{n+1} = y_n with columns interleaved x0, y0, x1, y1, ...
InfiniteMatrixView chain_plus2();
/// (A' -I) where A' is A with the diagonal 2's replaced by -(n+2).
InfiniteMatrixView remark_matrix();

/// Rows [0, rows) and, in every block, columns [0, cols_per_block);
/// block 0 columns come first. Throws DimensionError unless rows, cols >= 1.
FiniteMatrix truncate(const InfiniteMatrixView& a, std::uint64_t rows, std::uint64_t cols_per_block);
/// Same with an explicit column count per block.
FiniteMatrix truncate(const InfiniteMatrixView& a, std::uint64_t rows,
                      const std::vector<std::uint64_t>& cols_per_block);
/// (P -I_{M+1}) where P holds rows 0..M and columns 0..2^(M+1)-1 of A.
FiniteMatrix sec2_truncation(unsigned M);
std::vector<std::string> sec2_truncation_labels(unsigned M);

/// Ids: "schur", "vdw:<m>", "folkman:<m>", "sec2", "sec2-augmented",
/// "sec2-trunc:<M>", "chain-minus", "chain-plus2", "remark".
/// Throws UnknownIdError.
SystemSpec lookup_system(std::string_view id);
std::vector<std::string> system_ids();

/// "x0", "x1", ... for matrices without natural labels.
std::vector<std::string> default_labels(std::size_t count);

}  // namespace prkit

#endif  // PRKIT_SYSTEMS_HPP
