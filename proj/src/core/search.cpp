#include "prkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "prkit/errors.hpp"
#include "prkit/systems.hpp"

namespace prkit {

const char* to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Solution: return "Solution";
    case OutcomeKind::AvoidingColoring: return "AvoidingColoring";
    case OutcomeKind::Exhausted: return "Exhausted";
  }
  return "?";
}

bool is_monochromatic_solution(const FiniteMatrix& m, const Coloring& c, std::span<const Rational> x) {
  if (x.size() != m.cols()) return false;
  for (const auto& v : x)
    if (v.sign() <= 0 || !c.in_domain(v)) return false;
  if (!m.apply(RatVector(std::vector<Rational>(x.begin(), x.end()))).is_zero()) return false;
  const std::size_t first = c(x[0]);
  return std::all_of(x.begin(), x.end(), [&](const Rational& v) { return c(v) == first; });
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::int64_t kMaxCoefficient = std::int64_t{1} << 20;
constexpr std::int64_t kMaxValue = std::int64_t{1} << 20;

// Kernel of m over the integers: pivot variable = (sum coef[k] * free[k]) / den.
struct IntegerKernel {
  std::size_t vars = 0;
  std::vector<std::size_t> free_vars;
  struct Pivot {
    std::size_t var;
    std::vector<std::int64_t> coef;
    std::int64_t den;
  };
  std::vector<Pivot> pivots;
};

std::int64_t small_int(const mpz_class& z) {
  if (!z.fits_slong_p() || abs(z) > kMaxCoefficient)
    throw CapacityError("kernel coefficient too large for integer enumeration");
  return z.get_si();
}

IntegerKernel integer_kernel(const FiniteMatrix& m) {
  const RowEchelon e = rref(m);
  IntegerKernel k;
  k.vars = m.cols();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) k.free_vars.push_back(j);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    mpz_class den = 1;
    for (auto f : k.free_vars) den = lcm(den, e.reduced(i, f).den());
    IntegerKernel::Pivot p{e.pivots[i], {}, small_int(den)};
    for (auto f : k.free_vars) {
      const Rational c = -e.reduced(i, f) * Rational(den);
      p.coef.push_back(small_int(c.num()));
    }
    k.pivots.push_back(std::move(p));
  }
  return k;
}

// Depth-first walk over free-variable values drawn from `candidates`
// (increasing), pruning whenever some pivot can no longer land in [lo, hi].
// With `tied`, a free variable whose column equals the previous free
// variable's column takes values no smaller than it; this visits every value
// set but not every assignment.
class SolutionEnumerator {
 public:
  SolutionEnumerator(const IntegerKernel& kernel, std::vector<std::int64_t> candidates,
                     std::vector<bool> tied = {})
      : k_(kernel), cand_(std::move(candidates)), tied_(std::move(tied)) {
    tied_.resize(k_.free_vars.size(), false);
    if (cand_.empty()) return;
    lo_ = cand_.front();
    hi_ = cand_.back();
    if (lo_ < 1 || hi_ > kMaxValue) throw CapacityError("enumeration domain must lie in [1, 2^20]");
    const std::size_t nf = k_.free_vars.size();
    suffix_min_.assign(k_.pivots.size(), std::vector<std::int64_t>(nf + 1, 0));
    suffix_max_.assign(k_.pivots.size(), std::vector<std::int64_t>(nf + 1, 0));
    for (std::size_t p = 0; p < k_.pivots.size(); ++p)
      for (std::size_t f = nf; f-- > 0;) {
        const std::int64_t a = k_.pivots[p].coef[f] * lo_, b = k_.pivots[p].coef[f] * hi_;
        suffix_min_[p][f] = suffix_min_[p][f + 1] + std::min(a, b);
        suffix_max_[p][f] = suffix_max_[p][f + 1] + std::max(a, b);
      }
    partial_.assign(k_.pivots.size(), 0);
    values_.assign(k_.vars, 0);
  }

  std::uint64_t nodes() const { return nodes_; }

  // accept(v) filters pivot values; visit(values) returns false to stop;
  // stop(nodes) is polled at every node. Returns false if stopped early.
  template <class Accept, class Visit, class Stop>
  bool run(Accept&& accept, Visit&& visit, Stop&& stop) {
    if (cand_.empty() || k_.free_vars.empty()) return true;
    return walk(0, accept, visit, stop);
  }

 private:
  template <class Accept, class Visit, class Stop>
  bool walk(std::size_t f, Accept& accept, Visit& visit, Stop& stop) {
    const std::size_t nf = k_.free_vars.size();
    if (f == nf) {
      for (std::size_t p = 0; p < k_.pivots.size(); ++p) {
        const auto& piv = k_.pivots[p];
        if (partial_[p] % piv.den != 0) return true;
        const std::int64_t v = partial_[p] / piv.den;
        if (v < lo_ || v > hi_ || !accept(v)) return true;
        values_[piv.var] = v;
      }
      return visit(std::span<const std::int64_t>(values_));
    }
    for (const std::int64_t c : cand_) {
      if (tied_[f] && c < values_[k_.free_vars[f - 1]]) continue;
      ++nodes_;
      if (stop(nodes_)) return false;
      bool viable = true;
      for (std::size_t p = 0; p < k_.pivots.size(); ++p) {
        const auto& piv = k_.pivots[p];
        partial_[p] += piv.coef[f] * c;
        const std::int64_t mn = partial_[p] + suffix_min_[p][f + 1];
        const std::int64_t mx = partial_[p] + suffix_max_[p][f + 1];
        if (mx < lo_ * piv.den || mn > hi_ * piv.den) viable = false;
      }
      values_[k_.free_vars[f]] = c;
      bool keep_going = true;
      if (viable) keep_going = walk(f + 1, accept, visit, stop);
      for (std::size_t p = 0; p < k_.pivots.size(); ++p) partial_[p] -= k_.pivots[p].coef[f] * c;
      if (!keep_going) return false;
    }
    return true;
  }

  const IntegerKernel& k_;
  std::vector<std::int64_t> cand_;
  std::vector<bool> tied_;
  std::int64_t lo_ = 1;
  std::int64_t hi_ = 0;
  std::vector<std::vector<std::int64_t>> suffix_min_;
  std::vector<std::vector<std::int64_t>> suffix_max_;
  std::vector<std::int64_t> partial_;
  std::vector<std::int64_t> values_;
  std::uint64_t nodes_ = 0;
};

std::vector<Rational> to_rationals(std::span<const std::int64_t> v) {
  std::vector<Rational> out;
  for (auto x : v) out.emplace_back(static_cast<long long>(x));
  return out;
}

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

SearchOutcome find_mono_solution(const FiniteMatrix& m, const Coloring& coloring, const SearchBudget& budget) {
  if (budget.N < 1 || budget.N > kMaxValue) throw PreconditionError("budget N must lie in [1, 2^20]");
  const auto start = Clock::now();
  const IntegerKernel kernel = integer_kernel(m);
  std::vector<std::size_t> color(static_cast<std::size_t>(budget.N) + 1, 0);
  for (std::int64_t n = 1; n <= budget.N; ++n) color[n] = coloring(Rational(static_cast<long long>(n)));

  SearchOutcome out;
  bool budget_hit = false;
  auto stop = [&](std::uint64_t nodes) {
    if (out.stats.nodes + nodes > budget.max_nodes) budget_hit = true;
    if ((nodes & 0xfff) == 0 && millis_since(start) >= static_cast<double>(budget.max_millis)) budget_hit = true;
    return budget_hit;
  };
  for (std::size_t c = coloring.base(); c < coloring.base() + coloring.palette() && !budget_hit; ++c) {
    std::vector<std::int64_t> cls;
    for (std::int64_t n = 1; n <= budget.N; ++n)
      if (color[n] == c) cls.push_back(n);
    SolutionEnumerator en(kernel, cls);
    std::optional<std::vector<Rational>> found;
    en.run([&](std::int64_t v) { return color[v] == c; },
           [&](std::span<const std::int64_t> vals) {
             found = to_rationals(vals);
             return false;
           },
           stop);
    out.stats.nodes += en.nodes();
    if (found) {
      if (!is_monochromatic_solution(m, coloring, *found))
        throw std::logic_error("find_mono_solution produced an invalid solution");
      out.kind = OutcomeKind::Solution;
      out.assignment = std::move(*found);
      out.stats.millis = millis_since(start);
      return out;
    }
  }
  out.kind = OutcomeKind::Exhausted;
  out.complete = !budget_hit;
  out.stats.millis = millis_since(start);
  return out;
}

std::optional<std::vector<std::int64_t>> solution_in_class(const FiniteMatrix& m,
                                                           std::span<const std::int64_t> cls, bool distinct) {
  if (cls.empty()) throw PreconditionError("solution_in_class needs a non-empty class");
  std::vector<std::int64_t> members(cls.begin(), cls.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.front() < 1) throw PreconditionError("class members must be positive integers");
  const IntegerKernel kernel = integer_kernel(m);
  SolutionEnumerator en(kernel, members);
  std::optional<std::vector<std::int64_t>> found;
  en.run([&](std::int64_t v) { return std::binary_search(members.begin(), members.end(), v); },
         [&](std::span<const std::int64_t> vals) {
           if (distinct) {
             std::vector<std::int64_t> s(vals.begin(), vals.end());
             std::sort(s.begin(), s.end());
             if (std::adjacent_find(s.begin(), s.end()) != s.end()) return true;
           }
           found.emplace(vals.begin(), vals.end());
           return false;
         },
         [](std::uint64_t) { return false; });
  return found;
}

namespace {

// All solutions in [1, cap]^v, grouped by their largest value n, each kept
// as the sorted distinct values below n.
constexpr std::uint64_t kSolutionNodeLimit = 200'000'000;

std::vector<std::vector<std::vector<std::uint32_t>>> solutions_by_max(const FiniteMatrix& m, std::uint64_t cap) {
  const IntegerKernel kernel = integer_kernel(m);
  std::vector<std::int64_t> all(cap);
  std::iota(all.begin(), all.end(), 1);
  std::vector<std::vector<std::vector<std::uint32_t>>> by_max(cap + 1);
  std::vector<bool> tied(kernel.free_vars.size(), false);
  for (std::size_t f = 1; f < tied.size(); ++f)
    tied[f] = m.column(kernel.free_vars[f]) == m.column(kernel.free_vars[f - 1]);
  SolutionEnumerator en(kernel, all, std::move(tied));
  std::vector<std::uint32_t> s;
  en.run([](std::int64_t) { return true; },
         [&](std::span<const std::int64_t> vals) {
           s.assign(vals.begin(), vals.end());
           std::sort(s.begin(), s.end());
           s.erase(std::unique(s.begin(), s.end()), s.end());
           const std::uint32_t top = s.back();
           s.pop_back();
           by_max[top].push_back(s);
           return true;
         },
         [](std::uint64_t nodes) { return nodes > kSolutionNodeLimit; });
  if (en.nodes() > kSolutionNodeLimit) throw CapacityError("forcing search: solution space too large for this cap");
  for (auto& group : by_max) {
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
  }
  return by_max;
}

class ColoringSearch {
 public:
  ColoringSearch(const std::vector<std::vector<std::vector<std::uint32_t>>>& sets, unsigned k, std::uint64_t cap)
      : sets_(sets), k_(k), cap_(cap), color_(cap + 1, 0) {}

  struct Result {
    std::uint64_t best_depth = 0;
    std::vector<std::uint8_t> best;
    std::uint64_t nodes = 0;
    bool reached_cap = false;
  };

  bool conflict(std::uint64_t n, std::uint8_t c) const {
    for (const auto& s : sets_[n]) {
      bool mono = true;
      for (auto v : s)
        if (color_[v] != c) {
          mono = false;
          break;
        }
      if (mono) return true;
    }
    return false;
  }

  // Explores below a fixed prefix (colors of 1..prefix.size()).
  Result run_from(const std::vector<std::uint8_t>& prefix, const std::atomic<bool>* abandon) {
    Result r;
    std::uint8_t used = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      color_[i + 1] = prefix[i];
      used = std::max<std::uint8_t>(used, static_cast<std::uint8_t>(prefix[i] + 1));
    }
    abandon_ = abandon;
    dfs(prefix.size() + 1, used, r);
    return r;
  }

  // Serial enumeration of avoiding prefixes of length `depth` in lex order;
  // dead ends shallower than `depth` are recorded in `r`.
  void collect_prefixes(std::uint64_t depth, std::vector<std::vector<std::uint8_t>>& out, Result& r) {
    split_depth_ = depth;
    prefixes_ = &out;
    dfs(1, 0, r);
    prefixes_ = nullptr;
  }

 private:
  bool dfs(std::uint64_t n, std::uint8_t used, Result& r) {
    ++r.nodes;
    const std::uint64_t depth = n - 1;
    if (prefixes_ && depth == split_depth_) {
      prefixes_->emplace_back(color_.begin() + 1, color_.begin() + 1 + static_cast<std::ptrdiff_t>(depth));
      return false;
    }
    if (depth > r.best_depth || r.best.size() < depth) {
      r.best_depth = depth;
      r.best.assign(color_.begin() + 1, color_.begin() + 1 + static_cast<std::ptrdiff_t>(depth));
    }
    if (depth == cap_) {
      r.reached_cap = true;
      return true;
    }
    if (abandon_ && (r.nodes & 0x3ff) == 0 && abandon_->load(std::memory_order_relaxed)) return true;
    const unsigned limit = std::min<unsigned>(k_, used + 1u);
    for (unsigned c = 0; c < limit; ++c) {
      const auto cc = static_cast<std::uint8_t>(c);
      if (conflict(n, cc)) continue;
      color_[n] = cc;
      if (dfs(n + 1, std::max<std::uint8_t>(used, static_cast<std::uint8_t>(cc + 1)), r)) return true;
    }
    return false;
  }

  const std::vector<std::vector<std::vector<std::uint32_t>>>& sets_;
  unsigned k_;
  std::uint64_t cap_;
  std::vector<std::uint8_t> color_;
  const std::atomic<bool>* abandon_ = nullptr;
  std::vector<std::vector<std::uint8_t>>* prefixes_ = nullptr;
  std::uint64_t split_depth_ = 0;
};

}  // namespace

namespace {

SearchOutcome forcing_round(const FiniteMatrix& m, unsigned k, std::uint64_t cap, const ForcingOptions& opts) {
  const auto sets = solutions_by_max(m, cap);

  // Fixed split depth: independent of the thread count.
  std::uint64_t split = 1;
  for (std::uint64_t branches = 1; k > 1 && branches < 64; branches *= k) ++split;
  split = std::min(split, cap);

  ColoringSearch serial(sets, k, cap);
  ColoringSearch::Result head;
  std::vector<std::vector<std::uint8_t>> prefixes;
  serial.collect_prefixes(split, prefixes, head);

  std::vector<ColoringSearch::Result> results(prefixes.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_hit{prefixes.size()};
  // Only branches after the first cap-reaching one may be abandoned; their
  // counts are discarded in the merge.
  std::vector<std::atomic<bool>> abandon(prefixes.size());
  auto worker = [&] {
    ColoringSearch local(sets, k, cap);
    for (std::size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
      if (i > first_hit.load()) continue;
      results[i] = local.run_from(prefixes[i], &abandon[i]);
      if (results[i].reached_cap) {
        std::size_t cur = first_hit.load();
        while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
        }
        for (std::size_t j = i + 1; j < prefixes.size(); ++j) abandon[j].store(true);
      }
    }
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchOutcome out;
  std::uint64_t nodes = head.nodes;
  const ColoringSearch::Result* best = &head;
  const std::size_t last = std::min(first_hit.load(), prefixes.size() == 0 ? 0 : prefixes.size() - 1);
  for (std::size_t i = 0; i < prefixes.size() && i <= last; ++i) {
    nodes += results[i].nodes;
    if (best == &head || results[i].best_depth > best->best_depth) best = &results[i];
  }
  out.stats.nodes = nodes;
  out.coloring.assign(best->best.begin(), best->best.end());
  if (best->best_depth >= cap) {
    out.kind = OutcomeKind::AvoidingColoring;
  } else {
    out.kind = OutcomeKind::Exhausted;
    out.forcing_number = best->best_depth + 1;
  }
  return out;
}

}  // namespace

// Whether [1, N] is forced depends only on solutions with entries <= N, so the
// cap grows by doubling and the solution sets stay small.
SearchOutcome forcing_number(const FiniteMatrix& m, unsigned k, std::uint64_t cap, const ForcingOptions& opts) {
  if (k < 1 || k > 16) throw PreconditionError("forcing_number needs 1 <= k <= 16");
  if (cap < 1 || static_cast<std::int64_t>(cap) > kMaxValue) throw PreconditionError("cap must lie in [1, 2^20]");
  const auto start = Clock::now();
  std::uint64_t nodes = 0;
  std::optional<SearchOutcome> last;
  for (std::uint64_t round_cap = std::min<std::uint64_t>(cap, 8);; round_cap = std::min(cap, 2 * round_cap)) {
    SearchOutcome out;
    try {
      out = forcing_round(m, k, round_cap, opts);
    } catch (const CapacityError&) {
      // Too many solutions at this cap: report the avoiding coloring from the
      // last round that fit, marked incomplete.
      if (!last) throw;
      last->complete = false;
      last->stats.nodes = nodes;
      last->stats.millis = millis_since(start);
      return *last;
    }
    nodes += out.stats.nodes;
    if (out.kind == OutcomeKind::Exhausted || round_cap == cap) {
      out.stats.nodes = nodes;
      out.stats.millis = millis_since(start);
      return out;
    }
    last = std::move(out);
  }
}

SearchOutcome truncation_forcing_demo(unsigned M, unsigned k, std::uint64_t cap, const ForcingOptions& opts) {
  if (M > 2) throw PreconditionError("truncation demo supports M <= 2");
  if (k < 1 || k > 2) throw PreconditionError("truncation demo supports k in {1, 2}");
  return forcing_number(sec2_truncation(M), k, cap, opts);
}

}  // namespace prkit
