#ifndef PRKIT_LINALG_HPP
#define PRKIT_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "prkit/rational.hpp"

namespace prkit {

/// Fixed-length vector of rationals with exact componentwise arithmetic.
class RatVector {
 public:
  RatVector() = default;
  explicit RatVector(std::size_t n) : v_(n) {}
  RatVector(std::initializer_list<Rational> values) : v_(values) {}
  explicit RatVector(std::vector<Rational> values) : v_(std::move(values)) {}

  std::size_t size() const { return v_.size(); }
  const Rational& operator[](std::size_t i) const { return v_[i]; }
  Rational& operator[](std::size_t i) { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Rational>& values() const { return v_; }

  bool is_zero() const;
  std::size_t hash() const;

  /// Throws DimensionError on length mismatch.
  RatVector& operator+=(const RatVector& o);
  RatVector& operator-=(const RatVector& o);
  RatVector scaled(const Rational& s) const;
  /// this += s * o
  void add_scaled(const Rational& s, const RatVector& o);

  friend RatVector operator+(RatVector a, const RatVector& b) { return a += b; }
  friend RatVector operator-(RatVector a, const RatVector& b) { return a -= b; }
  friend bool operator==(const RatVector&, const RatVector&) = default;

 private:
  std::vector<Rational> v_;
};

/// Dense u x v rational matrix, u, v >= 1, stored row-major.
class FiniteMatrix {
 public:
  /// Zero matrix. Throws DimensionError unless rows, cols >= 1.
  FiniteMatrix(std::size_t rows, std::size_t cols);
  /// Rows given as lists; all rows must have equal, non-zero length.
  FiniteMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static FiniteMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  /// Bounds-checked access; throws DimensionError.
  const Rational& at(std::size_t i, std::size_t j) const;
  Rational& at(std::size_t i, std::size_t j);

  RatVector column(std::size_t j) const;
  RatVector row(std::size_t i) const;
  RatVector apply(const RatVector& x) const;
  /// [this | other]; row counts must agree.
  FiniteMatrix hconcat(const FiniteMatrix& other) const;
  bool all_integer() const;

  friend bool operator==(const FiniteMatrix&, const FiniteMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
  FiniteMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Exact Gauss-Jordan elimination. Within each column the pivot row is the
/// candidate of smallest bit size (lowest row on ties); the result is the
/// unique RREF either way.
RowEchelon rref(FiniteMatrix m);

std::size_t rank(const FiniteMatrix& m);

/// Coefficients c with sum_i c_i * basis_i == target, or nullopt when the
/// target is outside the span. An empty basis spans only the zero vector.
/// Free coefficients are set to zero.
std::optional<std::vector<Rational>> span_membership(std::span<const RatVector> basis,
                                                     const RatVector& target);

/// Canonical kernel basis: one vector per free column of the RREF, with that
/// free variable set to 1 and the other free variables set to 0.
std::vector<RatVector> kernel_basis(const FiniteMatrix& m);

/// Sum of the selected columns; empty subset gives the zero vector.
RatVector column_sum(const FiniteMatrix& m, std::span<const std::size_t> subset);

/// Span of a growing set of vectors, kept as a fully reduced echelon basis so
/// that residues modulo the span are canonical.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  /// Unique representative of v modulo the span (zero at every pivot).
  RatVector residue(const RatVector& v) const;
  bool contains(const RatVector& v) const { return residue(v).is_zero(); }
  /// Returns true if the span grew.
  bool insert(const RatVector& v);

 private:
  std::size_t dim_;
  std::vector<RatVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace prkit

template <>
struct std::hash<prkit::RatVector> {
  std::size_t operator()(const prkit::RatVector& v) const noexcept { return v.hash(); }
};

#endif  // PRKIT_LINALG_HPP
