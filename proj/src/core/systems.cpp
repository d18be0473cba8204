#include "prkit/systems.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <string>

#include "prkit/errors.hpp"

namespace prkit {

namespace {

constexpr std::uint64_t kMaxEnumeratedRow = 40;

unsigned floor_log2(std::uint64_t j) { return 63u - static_cast<unsigned>(std::countl_zero(j)); }

std::string indexed(const char* prefix, std::uint64_t i) { return prefix + std::to_string(i); }

// A with diagonal entries diag(i); the off-diagonal 1's are shared by the
// main example and the remark matrix.
InfiniteMatrixView dyadic_block_matrix(std::string name, std::function<Rational(std::uint64_t)> diag) {
  InfiniteMatrixView::Rules r;
  r.name = std::move(name);
  r.blocks = 1;
  r.entry = [diag](std::uint64_t i, ColumnRef c) -> Rational {
    const std::uint64_t j = c.index;
    if (j == i) return diag(i);
    if (j >= 1 && floor_log2(j) == i) return 1;
    return 0;
  };
  r.column = [diag](ColumnRef c) {
    const std::uint64_t j = c.index;
    if (j == 0) return std::vector<ColumnEntry>{{0, diag(0)}};
    return std::vector<ColumnEntry>{{floor_log2(j), 1}, {j, diag(j)}};
  };
  r.row = [diag](std::uint64_t i) {
    if (i > kMaxEnumeratedRow)
      throw CapacityError("row " + std::to_string(i) + " has too many entries to enumerate");
    std::vector<RowEntry> out{{{0, i}, diag(i)}};
    for (std::uint64_t j = std::uint64_t{1} << i; j < (std::uint64_t{1} << (i + 1)); ++j)
      out.push_back({{0, j}, 1});
    return out;
  };
  r.row_abs_sum = [diag](std::uint64_t i) {
    mpz_class width;
    mpz_ui_pow_ui(width.get_mpz_t(), 2, i);
    return diag(i).abs() + Rational(width);
  };
  r.label = [](ColumnRef c) { return indexed("x", c.index); };
  return InfiniteMatrixView(std::move(r));
}

// x_n * a + x_{n+1} * b - y_n = 0, columns interleaved x0, y0, x1, y1, ...
InfiniteMatrixView chain(std::string name, Rational a, Rational b) {
  InfiniteMatrixView::Rules r;
  r.name = std::move(name);
  r.blocks = 1;
  r.entry = [a, b](std::uint64_t i, ColumnRef c) -> Rational {
    const std::uint64_t j = c.index;
    if (j == 2 * i) return a;
    if (j == 2 * i + 1) return -1;
    if (j == 2 * i + 2) return b;
    return 0;
  };
  r.column = [a, b](ColumnRef c) {
    const std::uint64_t j = c.index;
    const std::uint64_t n = j / 2;
    if (j % 2 == 1) return std::vector<ColumnEntry>{{n, -1}};
    if (n == 0) return std::vector<ColumnEntry>{{0, a}};
    return std::vector<ColumnEntry>{{n - 1, b}, {n, a}};
  };
  r.row = [a, b](std::uint64_t i) {
    return std::vector<RowEntry>{{{0, 2 * i}, a}, {{0, 2 * i + 1}, -1}, {{0, 2 * i + 2}, b}};
  };
  const Rational total = a.abs() + b.abs() + 1;
  r.row_abs_sum = [total](std::uint64_t) { return total; };
  r.row_abs_sum_sup = total;
  r.label = [](ColumnRef c) { return indexed(c.index % 2 == 0 ? "x" : "y", c.index / 2); };
  return InfiniteMatrixView(std::move(r));
}

unsigned parse_parameter(std::string_view id, std::string_view prefix) {
  const std::string_view tail = id.substr(prefix.size());
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
  if (ec != std::errc() || ptr != tail.data() + tail.size() || tail.empty())
    throw UnknownIdError("bad parameter in system id: " + std::string(id));
  return value;
}

}  // namespace

InfiniteMatrixView::InfiniteMatrixView(Rules rules) : r_(std::move(rules)) {
  if (r_.blocks == 0) throw PreconditionError("infinite matrix needs at least one block");
}

void InfiniteMatrixView::check_block(ColumnRef col) const {
  if (col.block >= r_.blocks)
    throw DimensionError("column block " + std::to_string(col.block) + " out of range for " + r_.name);
}

Rational InfiniteMatrixView::entry(std::uint64_t row, ColumnRef col) const {
  check_block(col);
  return r_.entry(row, col);
}

std::vector<ColumnEntry> InfiniteMatrixView::column(ColumnRef col) const {
  check_block(col);
  return r_.column(col);
}

std::vector<RowEntry> InfiniteMatrixView::row(std::uint64_t i) const { return r_.row(i); }

const FiniteMatrix& SystemSpec::finite() const {
  if (!is_finite()) throw PreconditionError("system '" + id + "' is infinite");
  return std::get<FiniteMatrix>(matrix);
}

const InfiniteMatrixView& SystemSpec::infinite() const {
  if (is_finite()) throw PreconditionError("system '" + id + "' is finite");
  return std::get<InfiniteMatrixView>(matrix);
}

FiniteMatrix schur() { return FiniteMatrix{{1, 1, -1}}; }

FiniteMatrix vdw(unsigned m) {
  if (m < 2) throw PreconditionError("vdw(m) requires m >= 2");
  FiniteMatrix out(m - 1, m + 1);
  for (std::size_t r = 0; r + 1 < m; ++r) {
    out(r, 0) = 1;
    out(r, r + 1) = 1;
    out(r, r + 2) = -1;
  }
  return out;
}

namespace {

std::vector<std::vector<unsigned>> folkman_subsets(unsigned m) {
  if (m < 1 || m > 10) throw CapacityError("folkman(m) requires 1 <= m <= 10");
  std::vector<std::vector<unsigned>> subsets;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<unsigned> s;
    for (unsigned i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return subsets;
}

}  // namespace

FiniteMatrix folkman(unsigned m) {
  const auto subsets = folkman_subsets(m);
  // m = 1 has no equations; represent it by the single trivial row 0 = 0.
  if (subsets.empty()) return FiniteMatrix(1, 1);
  FiniteMatrix out(subsets.size(), m + subsets.size());
  for (std::size_t r = 0; r < subsets.size(); ++r) {
    for (unsigned i : subsets[r]) out(r, i - 1) = 1;
    out(r, m + r) = -1;
  }
  return out;
}

std::vector<std::string> folkman_labels(unsigned m) {
  std::vector<std::string> labels;
  for (unsigned i = 1; i <= m; ++i) labels.push_back(indexed("x", i));
  for (const auto& s : folkman_subsets(m)) {
    std::string l = "y{";
    for (std::size_t k = 0; k < s.size(); ++k) l += (k ? "," : "") + std::to_string(s[k]);
    labels.push_back(l + "}");
  }
  return labels;
}

InfiniteMatrixView infinite_A() {
  return dyadic_block_matrix("sec2", [](std::uint64_t) { return Rational(2); });
}

InfiniteMatrixView augment_neg_identity(const InfiniteMatrixView& a) {
  if (a.blocks() != 1) throw PreconditionError("augment_neg_identity needs a single-block matrix");
  InfiniteMatrixView::Rules r;
  r.name = a.name() + "-augmented";
  r.blocks = 2;
  r.entry = [a](std::uint64_t i, ColumnRef c) -> Rational {
    if (c.block == 0) return a.entry(i, c);
    return c.index == i ? Rational(-1) : Rational(0);
  };
  r.column = [a](ColumnRef c) {
    if (c.block == 0) return a.column(c);
    return std::vector<ColumnEntry>{{c.index, -1}};
  };
  r.row = [a](std::uint64_t i) {
    auto out = a.row(i);
    out.push_back({{1, i}, -1});
    return out;
  };
  r.row_abs_sum = [a](std::uint64_t i) { return a.row_abs_sum(i) + 1; };
  if (a.row_abs_sum_sup()) r.row_abs_sum_sup = *a.row_abs_sum_sup() + 1;
  r.label = [a](ColumnRef c) { return c.block == 0 ? a.label(c) : indexed("y", c.index); };
  return InfiniteMatrixView(std::move(r));
}

InfiniteMatrixView chain_minus() { return chain("chain-minus", 1, -1); }

InfiniteMatrixView chain_plus2() { return chain("chain-plus2", 1, 2); }

InfiniteMatrixView remark_matrix() {
  auto a = dyadic_block_matrix("remark-A", [](std::uint64_t n) {
    return -Rational(static_cast<long long>(n) + 2);
  });
  InfiniteMatrixView::Rules r;
  auto aug = augment_neg_identity(a);
  r.name = "remark";
  r.blocks = 2;
  r.entry = [aug](std::uint64_t i, ColumnRef c) { return aug.entry(i, c); };
  r.column = [aug](ColumnRef c) { return aug.column(c); };
  r.row = [aug](std::uint64_t i) { return aug.row(i); };
  r.row_abs_sum = [aug](std::uint64_t i) { return aug.row_abs_sum(i); };
  r.label = [aug](ColumnRef c) { return aug.label(c); };
  return InfiniteMatrixView(std::move(r));
}

FiniteMatrix truncate(const InfiniteMatrixView& a, std::uint64_t rows,
                      const std::vector<std::uint64_t>& cols_per_block) {
  if (cols_per_block.size() != a.blocks())
    throw DimensionError("truncate: need one column count per block");
  std::uint64_t total = 0;
  for (auto c : cols_per_block) total += c;
  if (rows == 0 || total == 0) throw DimensionError("truncate: rows and columns must be positive");
  FiniteMatrix out(rows, total);
  std::size_t offset = 0;
  for (unsigned b = 0; b < a.blocks(); ++b) {
    for (std::uint64_t j = 0; j < cols_per_block[b]; ++j)
      for (const auto& e : a.column({b, j}))
        if (e.row < rows) out(e.row, offset + j) = e.value;
    offset += cols_per_block[b];
  }
  return out;
}

FiniteMatrix truncate(const InfiniteMatrixView& a, std::uint64_t rows, std::uint64_t cols_per_block) {
  return truncate(a, rows, std::vector<std::uint64_t>(a.blocks(), cols_per_block));
}

FiniteMatrix sec2_truncation(unsigned M) {
  if (M > 20) throw CapacityError("sec2_truncation: M too large");
  return truncate(augment_neg_identity(infinite_A()), M + 1,
                  std::vector<std::uint64_t>{std::uint64_t{1} << (M + 1), M + 1});
}

std::vector<std::string> sec2_truncation_labels(unsigned M) {
  std::vector<std::string> labels;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << (M + 1)); ++j) labels.push_back(indexed("x", j));
  for (std::uint64_t j = 0; j <= M; ++j) labels.push_back(indexed("y", j));
  return labels;
}

std::vector<std::string> default_labels(std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < count; ++j) labels.push_back(indexed("x", j));
  return labels;
}

SystemSpec lookup_system(std::string_view id) {
  auto finite = [&](std::string description, FiniteMatrix m, std::vector<std::string> labels) {
    return SystemSpec{std::string(id), std::move(description), std::move(m), std::move(labels)};
  };
  auto infinite = [&](std::string description, InfiniteMatrixView v) {
    return SystemSpec{std::string(id), std::move(description), std::move(v), {}};
  };
  if (id == "schur") return finite("x + y = z", schur(), {"x", "y", "z"});
  if (id.starts_with("vdw:")) {
    const unsigned m = parse_parameter(id, "vdw:");
    std::vector<std::string> labels{"d"};
    for (unsigned k = 0; k < m; ++k) labels.push_back(indexed("a", k));
    return finite("arithmetic progressions of length " + std::to_string(m) + " with difference",
                  vdw(m), std::move(labels));
  }
  if (id.starts_with("folkman:")) {
    const unsigned m = parse_parameter(id, "folkman:");
    auto mat = folkman(m);
    auto labels = folkman_labels(m);
    return finite("finite sums of " + std::to_string(m) + " terms", std::move(mat), std::move(labels));
  }
  if (id.starts_with("sec2-trunc:")) {
    const unsigned M = parse_parameter(id, "sec2-trunc:");
    auto mat = sec2_truncation(M);
    return finite("rows 0.." + std::to_string(M) + " of 2x_n + sum x_j = y_n", std::move(mat),
                  sec2_truncation_labels(M));
  }
  if (id == "sec2") return infinite("A: 2 on the diagonal, 1 on 2^i <= j < 2^(i+1)", infinite_A());
  if (id == "sec2-augmented")
    return infinite("2x_n + x_{2^n} + ... + x_{2^(n+1)-1} = y_n", augment_neg_identity(infinite_A()));
  if (id == "chain-minus") return infinite("x_n - x_{n+1} = y_n", chain_minus());
  if (id == "chain-plus2") return infinite("x_n + 2x_{n+1} = y_n", chain_plus2());
  if (id == "remark") return infinite("-(n+2)x_n + x_{2^n} + ... + x_{2^(n+1)-1} = y_n", remark_matrix());
  throw UnknownIdError("unknown system id: " + std::string(id));
}

std::vector<std::string> system_ids() {
  return {"schur",        "vdw:<m>",     "folkman:<m>", "sec2-trunc:<M>", "sec2",
          "sec2-augmented", "chain-minus", "chain-plus2", "remark"};
}

}  // namespace prkit
