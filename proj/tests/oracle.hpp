// Reference implementations used only by the tests. Deliberately naive and
// independent of the library: boost rationals instead of GMP, brute force
// instead of pruned search.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<Q>>;

inline Q q(long long n, long long d = 1) { return Q(n) / Q(d); }

inline std::size_t rank(Mat a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<Q> column(const Mat& m, std::size_t j) {
  std::vector<Q> c;
  for (const auto& row : m) c.push_back(row[j]);
  return c;
}

inline std::vector<Q> sum_columns(const Mat& m, const std::vector<std::size_t>& cols) {
  std::vector<Q> s(m.size(), Q(0));
  for (auto j : cols)
    for (std::size_t i = 0; i < m.size(); ++i) s[i] += m[i][j];
  return s;
}

inline bool is_zero(const std::vector<Q>& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
}

// target in span(vectors) iff appending it does not raise the rank.
inline bool in_span(const std::vector<std::vector<Q>>& vectors, const std::vector<Q>& target) {
  if (is_zero(target)) return true;
  if (vectors.empty()) return false;
  Mat a(target.size()), b(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    for (const auto& v : vectors) a[i].push_back(v[i]);
    b[i] = a[i];
    b[i].push_back(target[i]);
  }
  return rank(a) == rank(b);
}

// Columns property by trying every ordered partition into non-empty blocks.
// Feasible for up to about 7 columns.
inline bool columns_property_brute(const Mat& m) {
  const std::size_t v = m[0].size();
  std::vector<int> label(v, 0);
  // Assignment of each column to a block index; blocks must be 0..k-1 all used.
  std::function<bool(std::size_t, int)> rec = [&](std::size_t j, int k) -> bool {
    if (j == v) {
      for (int b = 0; b < k; ++b)
        if (std::find(label.begin(), label.end(), b) == label.end()) return false;
      std::vector<std::vector<Q>> earlier;
      for (int b = 0; b < k; ++b) {
        std::vector<std::size_t> blk;
        for (std::size_t c = 0; c < v; ++c)
          if (label[c] == b) blk.push_back(c);
        const auto s = sum_columns(m, blk);
        if (b == 0 ? !is_zero(s) : !in_span(earlier, s)) return false;
        for (auto c : blk) earlier.push_back(column(m, c));
      }
      return true;
    }
    for (int b = 0; b < static_cast<int>(v); ++b) {
      label[j] = b;
      if (rec(j + 1, std::max(k, b + 1))) return true;
    }
    return false;
  };
  return rec(0, 0);
}

// All positive integer solutions of an integer matrix inside [1, n]^v.
inline std::vector<std::vector<std::int64_t>> solutions_in_box(const std::vector<std::vector<std::int64_t>>& m,
                                                               std::int64_t n) {
  const std::size_t v = m[0].size();
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(v, 1);
  while (true) {
    bool ok = true;
    for (const auto& row : m) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < v; ++j) s += row[j] * x[j];
      if (s != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
    std::size_t j = 0;
    while (j < v && x[j] == n) x[j++] = 1;
    if (j == v) break;
    ++x[j];
  }
  return out;
}

// Value sets of solutions, for coloring checks.
inline std::vector<std::vector<std::int64_t>> value_sets(const std::vector<std::vector<std::int64_t>>& sols) {
  std::vector<std::vector<std::int64_t>> out;
  for (auto s : sols) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool has_mono(const std::vector<std::vector<std::int64_t>>& sets, const std::vector<int>& color) {
  for (const auto& s : sets) {
    bool mono = true;
    for (auto v : s)
      if (v > static_cast<std::int64_t>(color.size()) || color[v - 1] != color[s[0] - 1]) {
        mono = false;
        break;
      }
    if (mono) return true;
  }
  return false;
}

// Smallest N <= cap with every k-coloring of [1, N] forced, by trying all
// k^N colorings for each N. Only for tiny instances.
inline std::optional<std::int64_t> forcing_brute(const std::vector<std::vector<std::int64_t>>& sets, int k,
                                                 std::int64_t cap) {
  for (std::int64_t n = 1; n <= cap; ++n) {
    std::vector<std::vector<std::int64_t>> within;
    for (const auto& s : sets)
      if (s.back() <= n) within.push_back(s);
    std::vector<int> color(n, 0);
    bool all_forced = true;
    while (true) {
      if (!has_mono(within, color)) {
        all_forced = false;
        break;
      }
      std::int64_t j = 0;
      while (j < n && color[j] == k - 1) color[j++] = 0;
      if (j == n) break;
      ++color[j];
    }
    if (all_forced) return n;
  }
  return std::nullopt;
}

// Plain backtracking over colorings of 1, 2, ... with a full rescan of the
// solution sets at every step; returns the longest avoiding prefix length
// (capped) so the forcing number is that plus one.
inline std::int64_t longest_avoiding(const std::vector<std::vector<std::int64_t>>& sets, int k, std::int64_t cap) {
  std::vector<int> color;
  std::int64_t best = 0;
  std::function<bool()> rec = [&]() -> bool {
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(color.size()));
    if (static_cast<std::int64_t>(color.size()) == cap) return true;
    for (int c = 0; c < k; ++c) {
      color.push_back(c);
      const std::int64_t n = static_cast<std::int64_t>(color.size());
      bool bad = false;
      for (const auto& s : sets) {
        if (s.back() != n) continue;
        if (std::all_of(s.begin(), s.end(), [&](std::int64_t v) { return color[v - 1] == c; })) {
          bad = true;
          break;
        }
      }
      if (!bad && rec()) return true;
      color.pop_back();
    }
    return false;
  };
  rec();
  return best;
}

// ---- number-theoretic references ----

inline Z factorial(unsigned t) {
  Z f = 1;
  for (unsigned i = 2; i <= t; ++i) f *= i;
  return f;
}

// m(x): least m >= 2 with den(x) | m!.
inline unsigned m_of(const Q& x) {
  const Z d = boost::multiprecision::denominator(x);
  for (unsigned m = 2;; ++m)
    if (factorial(m) % d == 0) return m;
}

// a(x, t) = floor(x * t!) mod t.
inline unsigned digit(const Q& x, unsigned t) {
  const Q scaled = x * Q(factorial(t));
  const Z fl = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  return static_cast<unsigned>(fl % t);
}

// floor(log2 x) by repeated halving / doubling.
inline long long floor_log2(Q x) {
  long long e = 0;
  while (x >= 2) {
    x /= 2;
    ++e;
  }
  while (x < 1) {
    x *= 2;
    --e;
  }
  return e;
}

inline unsigned tau(const Q& x) { return static_cast<unsigned>(((floor_log2(x) % 3) + 3) % 3); }

inline long long v2(Z n) {
  if (n < 0) n = -n;
  long long e = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++e;
  }
  return e;
}

inline unsigned psi(const Q& x) {
  const long long v = v2(boost::multiprecision::numerator(x)) - v2(boost::multiprecision::denominator(x));
  return static_cast<unsigned>(((v % 2) + 2) % 2);
}

// Rightmost nonzero base-q digit and its position.
inline std::pair<unsigned, unsigned> low_digit(std::uint64_t q, std::uint64_t x) {
  unsigned l = 0;
  while (x % q == 0) {
    x /= q;
    ++l;
  }
  return {static_cast<unsigned>(x % q), l};
}

}  // namespace oracle
