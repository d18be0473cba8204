#include "prkit/linalg.hpp"

#include <algorithm>
#include <string>

#include "prkit/errors.hpp"

namespace prkit {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b)
    throw DimensionError("vector length mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
}

}  // namespace

bool RatVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::size_t RatVector::hash() const {
  std::size_t h = v_.size();
  for (const auto& r : v_) h ^= r.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

RatVector& RatVector::operator+=(const RatVector& o) {
  require_same_length(size(), o.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

RatVector& RatVector::operator-=(const RatVector& o) {
  require_same_length(size(), o.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

RatVector RatVector::scaled(const Rational& s) const {
  RatVector out(*this);
  for (auto& r : out.v_) r *= s;
  return out;
}

void RatVector::add_scaled(const Rational& s, const RatVector& o) {
  require_same_length(size(), o.size());
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!o.v_[i].is_zero()) v_[i] += s * o.v_[i];
}

FiniteMatrix::FiniteMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  data_.resize(rows * cols);
}

FiniteMatrix::FiniteMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

FiniteMatrix FiniteMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw DimensionError("matrix dimensions must be positive");
  FiniteMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
  }
  return m;
}

const Rational& FiniteMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
  return (*this)(i, j);
}

Rational& FiniteMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
  return (*this)(i, j);
}

RatVector FiniteMatrix::column(std::size_t j) const {
  if (j >= cols_) throw DimensionError("column index out of range");
  RatVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatVector FiniteMatrix::row(std::size_t i) const {
  if (i >= rows_) throw DimensionError("row index out of range");
  return RatVector(std::vector<Rational>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
}

RatVector FiniteMatrix::apply(const RatVector& x) const {
  require_same_length(cols_, x.size());
  RatVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * x[j];
  return out;
}

FiniteMatrix FiniteMatrix::hconcat(const FiniteMatrix& other) const {
  if (other.rows_ != rows_) throw DimensionError("hconcat: row counts differ");
  FiniteMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
  }
  return out;
}

bool FiniteMatrix::all_integer() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_integer(); });
}

RowEchelon rref(FiniteMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      if (best == rows || m(i, c).bit_size() < m(best, c).bit_size()) best = i;
    }
    if (best == rows) continue;
    if (best != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    const Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FiniteMatrix& m) { return rref(m).pivots.size(); }

std::optional<std::vector<Rational>> span_membership(std::span<const RatVector> basis,
                                                     const RatVector& target) {
  const std::size_t n = target.size();
  for (const auto& b : basis) require_same_length(b.size(), n);
  if (basis.empty() || n == 0) {
    if (!target.is_zero()) return std::nullopt;
    return std::vector<Rational>(basis.size());
  }
  FiniteMatrix aug(n, basis.size() + 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
  for (std::size_t i = 0; i < n; ++i) aug(i, basis.size()) = target[i];
  const RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == basis.size()) return std::nullopt;
  std::vector<Rational> coeffs(basis.size());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    coeffs[e.pivots[i]] = e.reduced(i, basis.size());
  return coeffs;
}

std::vector<RatVector> kernel_basis(const FiniteMatrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

RatVector column_sum(const FiniteMatrix& m, std::span<const std::size_t> subset) {
  RatVector out(m.rows());
  for (auto j : subset) {
    if (j >= m.cols()) throw DimensionError("column index " + std::to_string(j) + " out of range");
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] += m(i, j);
  }
  return out;
}

RatVector IncrementalSpan::residue(const RatVector& v) const {
  require_same_length(v.size(), dim_);
  RatVector r(v);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational f = r[pivots_[k]];
    if (!f.is_zero()) r.add_scaled(-f, basis_[k]);
  }
  return r;
}

bool IncrementalSpan::insert(const RatVector& v) {
  RatVector r = residue(v);
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  r = r.scaled(Rational(1) / r[p]);
  for (auto& b : basis_) {
    const Rational f = b[p];
    if (!f.is_zero()) b.add_scaled(-f, r);
  }
  basis_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

}  // namespace prkit
