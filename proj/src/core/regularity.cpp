#include "prkit/regularity.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "prkit/colorings.hpp"
#include "prkit/errors.hpp"

namespace prkit {

namespace {

using Mask = std::uint64_t;

// Set order used for canonical answers: smaller size first, then the set
// holding the lowest index of the symmetric difference.
bool canonical_less(Mask a, Mask b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  const Mask diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

std::vector<RatVector> all_subset_sums(std::span<const RatVector> v, std::size_t dim) {
  std::vector<RatVector> sums(std::size_t{1} << v.size(), RatVector(dim));
  for (Mask s = 1; s < sums.size(); ++s) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(s));
    sums[s] = sums[s & (s - 1)] + v[low];
  }
  return sums;
}

// Canonically smallest non-empty subset of `v` summing to zero, by
// meet-in-the-middle over the two halves.
std::optional<Mask> smallest_zero_sum(std::span<const RatVector> v, std::size_t dim) {
  if (v.empty()) return std::nullopt;
  const std::size_t half = v.size() / 2;
  const auto left = all_subset_sums(v.first(half), dim);
  const auto right = all_subset_sums(v.subspan(half), dim);
  std::unordered_map<RatVector, std::vector<Mask>> by_sum;
  for (Mask l = 0; l < left.size(); ++l) by_sum[left[l]].push_back(l);
  std::optional<Mask> best;
  for (Mask r = 0; r < right.size(); ++r) {
    const auto it = by_sum.find(right[r].scaled(-1));
    if (it == by_sum.end()) continue;
    for (Mask l : it->second) {
      const Mask combined = l | (r << half);
      if (combined == 0) continue;
      if (!best || canonical_less(combined, *best)) best = combined;
    }
  }
  return best;
}

std::vector<std::size_t> mask_indices(Mask m, std::span<const std::size_t> index_of) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < index_of.size(); ++k)
    if (m & (Mask{1} << k)) out.push_back(index_of[k]);
  return out;
}

// Exhaustive zero-sum subset search over sparse columns with per-row
// feasibility pruning: every row with a nonzero partial sum must still be
// cancellable by the positive and negative entries of later columns.
class ZeroSubsetSearch {
 public:
  ZeroSubsetSearch(std::size_t rows, std::vector<std::vector<std::pair<std::size_t, Rational>>> cols)
      : cols_(std::move(cols)), by_row_(rows) {
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (const auto& [r, val] : cols_[j])
        if (!val.is_zero()) by_row_[r].push_back({j, val});
    suffix_pos_.resize(rows);
    suffix_neg_.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& entries = by_row_[r];
      suffix_pos_[r].assign(entries.size() + 1, Rational(0));
      suffix_neg_[r].assign(entries.size() + 1, Rational(0));
      for (std::size_t k = entries.size(); k-- > 0;) {
        suffix_pos_[r][k] = suffix_pos_[r][k + 1];
        suffix_neg_[r][k] = suffix_neg_[r][k + 1];
        (entries[k].value.sign() > 0 ? suffix_pos_[r][k] : suffix_neg_[r][k]) += entries[k].value;
      }
    }
    partial_.assign(rows, Rational(0));
  }

  std::optional<std::vector<std::size_t>> run(std::size_t max_size) {
    const std::size_t n = cols_.size();
    if (max_size == 0 || max_size > n) max_size = n;
    for (std::size_t first = 0; first < n; ++first) {
      for (std::size_t size = 1; size <= max_size && first + size <= n; ++size) {
        chosen_.clear();
        if (descend(first, size)) return chosen_;
      }
    }
    return std::nullopt;
  }

 private:
  struct RowItem {
    std::size_t col;
    Rational value;
  };

  void apply(std::size_t j, int sign) {
    for (const auto& [r, val] : cols_[j]) {
      if (sign > 0) partial_[r] += val;
      else partial_[r] -= val;
    }
  }

  // Rows touched so far that still need cancelling must be fixable by columns
  // with index > last.
  bool feasible(std::size_t last) const {
    for (std::size_t j : chosen_) {
      for (const auto& [r, val] : cols_[j]) {
        const Rational& p = partial_[r];
        if (p.is_zero()) continue;
        const auto& entries = by_row_[r];
        const auto it = std::upper_bound(entries.begin(), entries.end(), last,
                                         [](std::size_t c, const RowItem& e) { return c < e.col; });
        const std::size_t k = static_cast<std::size_t>(it - entries.begin());
        if (p + suffix_neg_[r][k] > Rational(0)) return false;
        if (p + suffix_pos_[r][k] < Rational(0)) return false;
      }
    }
    return true;
  }

  bool all_zero() const {
    for (std::size_t j : chosen_)
      for (const auto& [r, val] : cols_[j])
        if (!partial_[r].is_zero()) return false;
    return true;
  }

  bool descend(std::size_t j, std::size_t size) {
    chosen_.push_back(j);
    apply(j, +1);
    bool found = false;
    if (chosen_.size() == size) {
      found = all_zero();
    } else if (!all_zero() && feasible(j)) {
      const std::size_t remaining = size - chosen_.size();
      for (std::size_t k = j + 1; k + remaining <= cols_.size() && !found; ++k) found = descend(k, size);
    }
    if (!found) {
      apply(j, -1);
      chosen_.pop_back();
    }
    return found;
  }

  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols_;
  std::vector<std::vector<RowItem>> by_row_;
  std::vector<std::vector<Rational>> suffix_pos_;
  std::vector<std::vector<Rational>> suffix_neg_;
  std::vector<Rational> partial_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<ColumnsPropertyCertificate> columns_property(const FiniteMatrix& m,
                                                           const ColumnsPropertyOptions& opts) {
  const std::size_t v = m.cols();
  if (v > opts.max_columns || v > 62)
    throw CapacityError("columns_property: " + std::to_string(v) + " columns exceeds cap of " +
                        std::to_string(std::min<std::size_t>(opts.max_columns, 62)));
  std::vector<RatVector> cols;
  for (std::size_t j = 0; j < v; ++j) cols.push_back(m.column(j));
  std::vector<std::size_t> identity(v);
  for (std::size_t j = 0; j < v; ++j) identity[j] = j;

  const auto first = smallest_zero_sum(cols, m.rows());
  if (!first) return std::nullopt;

  ColumnsPropertyCertificate cert;
  IncrementalSpan span(m.rows());
  std::vector<bool> used(v, false);
  auto absorb = [&](const std::vector<std::size_t>& block) {
    for (auto j : block) {
      used[j] = true;
      span.insert(cols[j]);
    }
    cert.blocks.push_back(block);
  };
  absorb(mask_indices(*first, identity));

  while (true) {
    std::vector<std::size_t> remaining;
    for (std::size_t j = 0; j < v; ++j)
      if (!used[j]) remaining.push_back(j);
    if (remaining.empty()) break;

    std::vector<RatVector> residues;
    std::vector<std::size_t> block;
    for (auto j : remaining) {
      residues.push_back(span.residue(cols[j]));
      if (residues.back().is_zero()) block.push_back(j);
    }
    if (block.empty()) {
      const auto next = smallest_zero_sum(residues, m.rows());
      if (!next) return std::nullopt;
      block = mask_indices(*next, remaining);
    }

    std::vector<RatVector> basis;
    for (std::size_t j = 0; j < v; ++j)
      if (used[j]) basis.push_back(cols[j]);
    auto coeffs = span_membership(basis, column_sum(m, block));
    if (!coeffs) throw std::logic_error("columns_property: absorbed block left the span");
    cert.witnesses.push_back(std::move(*coeffs));
    absorb(block);
  }
  return cert;
}

bool verify_certificate(const FiniteMatrix& m, const ColumnsPropertyCertificate& cert) {
  const std::size_t v = m.cols();
  if (cert.blocks.empty() || cert.witnesses.size() + 1 != cert.blocks.size()) return false;
  std::vector<bool> seen(v, false);
  std::size_t covered = 0;
  for (const auto& block : cert.blocks) {
    if (block.empty()) return false;
    for (auto j : block) {
      if (j >= v || seen[j]) return false;
      seen[j] = true;
      ++covered;
    }
  }
  if (covered != v) return false;
  if (!column_sum(m, cert.blocks[0]).is_zero()) return false;

  std::vector<std::size_t> earlier(cert.blocks[0]);
  for (std::size_t t = 1; t < cert.blocks.size(); ++t) {
    std::sort(earlier.begin(), earlier.end());
    const auto& w = cert.witnesses[t - 1];
    if (w.size() != earlier.size()) return false;
    RatVector combo(m.rows());
    for (std::size_t k = 0; k < earlier.size(); ++k) combo.add_scaled(w[k], m.column(earlier[k]));
    if (combo != column_sum(m, cert.blocks[t])) return false;
    earlier.insert(earlier.end(), cert.blocks[t].begin(), cert.blocks[t].end());
  }
  return true;
}

RegularityVerdict is_partition_regular(const FiniteMatrix& m, const ColumnsPropertyOptions& opts) {
  RegularityVerdict verdict;
  verdict.certificate = columns_property(m, opts);
  verdict.regular = verdict.certificate.has_value();
  return verdict;
}

std::optional<std::vector<std::size_t>> zero_column_subset(const FiniteMatrix& m, std::size_t max_size) {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) cols[j].push_back({i, m(i, j)});
  return ZeroSubsetSearch(m.rows(), std::move(cols)).run(max_size);
}

std::optional<std::vector<ColumnRef>> zero_column_subset(const InfiniteMatrixView& m,
                                                         std::uint64_t cols_per_block,
                                                         std::size_t max_size) {
  std::vector<ColumnRef> refs;
  for (unsigned b = 0; b < m.blocks(); ++b)
    for (std::uint64_t j = 0; j < cols_per_block; ++j) refs.push_back({b, j});
  std::map<std::uint64_t, std::size_t> row_index;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
  for (const auto& ref : refs) {
    std::vector<std::pair<std::size_t, Rational>> col;
    for (const auto& e : m.column(ref)) {
      const auto [it, inserted] = row_index.try_emplace(e.row, row_index.size());
      col.push_back({it->second, e.value});
    }
    cols.push_back(std::move(col));
  }
  auto found = ZeroSubsetSearch(row_index.size(), std::move(cols)).run(max_size);
  if (!found) return std::nullopt;
  std::vector<ColumnRef> out;
  for (auto k : *found) out.push_back(refs[k]);
  return out;
}

RowSumProfile row_sum_profile(const FiniteMatrix& m) {
  RowSumProfile p;
  p.complete = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j).abs();
    if (!p.bound || s > *p.bound) p.bound = s;
    p.row_sums.push_back(std::move(s));
  }
  return p;
}

RowSumProfile row_sum_profile(const InfiniteMatrixView& m, std::uint64_t probe_rows) {
  RowSumProfile p;
  for (std::uint64_t i = 0; i < probe_rows; ++i) p.row_sums.push_back(m.row_abs_sum(i));
  p.bound = m.row_abs_sum_sup();
  return p;
}

RowSumReport bounded_row_sums(const RowSumProfile& profile) {
  RowSumReport report;
  if (profile.bound) {
    for (const auto& s : profile.row_sums)
      if (s > *profile.bound) throw PreconditionError("row sum " + s.str() + " exceeds declared bound");
    report.bounded = true;
    report.bound = profile.bound;
    return report;
  }
  if (profile.complete) throw PreconditionError("complete row-sum profile without a bound");
  for (std::size_t i = 0; i < profile.row_sums.size(); ++i)
    if (report.growth_witness.empty() || profile.row_sums[i] > report.growth_witness.back().second)
      report.growth_witness.push_back({i, profile.row_sums[i]});
  if (report.growth_witness.size() < 2)
    throw PreconditionError("row sums declared unbounded but probed rows show no growth");
  return report;
}

namespace {

std::uint64_t next_prime_above(const Rational& bound) {
  const mpz_class f = bound.floor();
  if (!f.fits_ulong_p()) throw CapacityError("row-sum bound too large");
  std::uint64_t q = f.get_ui() + 1;
  while (!is_prime(q)) ++q;
  return q;
}

}  // namespace

std::uint64_t smallest_admissible_prime(const FiniteMatrix& m) {
  if (!m.all_integer()) throw PreconditionError("smallest_admissible_prime needs integer entries");
  return next_prime_above(*row_sum_profile(m).bound);
}

std::uint64_t smallest_admissible_prime(const InfiniteMatrixView& m, std::uint64_t probe_rows) {
  const RowSumReport report = bounded_row_sums(row_sum_profile(m, probe_rows));
  if (!report.bounded) throw PreconditionError(m.name() + " has unbounded row sums");
  for (std::uint64_t i = 0; i < probe_rows; ++i)
    for (const auto& e : m.row(i))
      if (!e.value.is_integer()) throw PreconditionError("smallest_admissible_prime needs integer entries");
  return next_prime_above(*report.bound);
}

std::vector<std::size_t> extract_zero_subset_from_solution(const FiniteMatrix& m, std::uint64_t q,
                                                           std::span<const mpz_class> x) {
  if (!is_prime(q)) throw PreconditionError(std::to_string(q) + " is not prime");
  if (!m.all_integer()) throw PreconditionError("matrix entries must be integers");
  if (Rational(static_cast<long long>(q)) <= *row_sum_profile(m).bound)
    throw PreconditionError("prime " + std::to_string(q) + " does not exceed every row sum");
  if (x.size() != m.cols()) throw PreconditionError("solution length differs from column count");
  RatVector xv(m.cols());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] <= 0) throw PreconditionError("solution entries must be positive integers");
    xv[j] = Rational(x[j]);
  }
  if (!m.apply(xv).is_zero()) throw PreconditionError("vector is not in the kernel");

  std::vector<DigitDecomposition> digits;
  for (const auto& xj : x) digits.push_back(base_q_digit_decompose(q, xj));
  for (const auto& d : digits)
    if (d.b != digits.front().b)
      throw PreconditionError("solution is not monochromatic under the rightmost-digit coloring");

  std::uint64_t lowest = digits.front().l;
  for (const auto& d : digits) lowest = std::min(lowest, d.l);
  std::vector<std::size_t> J;
  for (std::size_t j = 0; j < digits.size(); ++j)
    if (digits[j].l == lowest) J.push_back(j);
  if (!column_sum(m, J).is_zero())
    throw std::logic_error("columns of J do not sum to zero despite admissible prime");
  return J;
}

}  // namespace prkit
