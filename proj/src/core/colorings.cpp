#include "prkit/colorings.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "prkit/errors.hpp"

namespace prkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

DigitDecomposition base_q_digit_decompose(std::uint64_t q, const mpz_class& x) {
  if (!is_prime(q)) throw DomainError("digit base " + std::to_string(q) + " is not prime");
  if (x < 1) throw DomainError("digit decomposition needs x >= 1, got " + x.get_str());
  DigitDecomposition d;
  d.q = q;
  mpz_class rest = x;
  mpz_class r;
  while (true) {
    r = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
    if (r != 0) break;
    ++d.l;
  }
  d.b = r.get_ui();
  d.a = rest;
  return d;
}

long long floor_log2(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("log2 of non-positive " + x.str());
  const long long e0 = static_cast<long long>(mpz_sizeinbase(x.num().get_mpz_t(), 2)) -
                       static_cast<long long>(mpz_sizeinbase(x.den().get_mpz_t(), 2));
  // p/q lies in (2^(e0-1), 2^(e0+1)); decide which half.
  mpz_class lhs = x.num();
  mpz_class rhs = x.den();
  if (e0 >= 0) rhs <<= static_cast<mp_bitcnt_t>(e0);
  else lhs <<= static_cast<mp_bitcnt_t>(-e0);
  return lhs >= rhs ? e0 : e0 - 1;
}

unsigned tau(const Rational& x) {
  const long long e = floor_log2(x);
  return static_cast<unsigned>(((e % 3) + 3) % 3);
}

std::uint64_t FactorialExpansion::digit(std::uint64_t t) const {
  if (t < 2 || t > m) return 0;
  return digits[t - 2];
}

FactorialExpansion factorial_expand(const Rational& x) {
  if (x.sign() <= 0 || x >= Rational(1))
    throw DomainError("factorial expansion needs 0 < x < 1, got " + x.str());
  constexpr std::uint64_t kMaxDigits = 1'000'000;
  FactorialExpansion fe;
  mpq_class r = x.raw();
  for (std::uint64_t t = 2;; ++t) {
    if (t > kMaxDigits) throw CapacityError("factorial expansion longer than 10^6 digits");
    r *= static_cast<unsigned long>(t);
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    r -= a;
    fe.digits.push_back(a.get_ui());
    if (sgn(r) == 0) {
      fe.m = t;
      return fe;
    }
  }
}

namespace {

NuTable build_nu(std::uint64_t t) {
  NuTable table;
  table.t = t;
  constexpr std::uint8_t kUncolored = 0xff;
  table.colors.assign(t, kUncolored);
  auto image = [t](std::uint64_t i) { return (2 * i) % t; };  // 0 means no edge

  std::vector<std::vector<std::uint64_t>> preimages(t);
  for (std::uint64_t i = 1; i < t; ++i)
    if (image(i) != 0) preimages[image(i)].push_back(i);

  std::deque<std::uint64_t> frontier;
  // 0 = unseen, 1 = on the current walk, 2 = finished
  std::vector<std::uint8_t> state(t, 0);
  for (std::uint64_t start = 1; start < t; ++start) {
    if (state[start] != 0) continue;
    std::vector<std::uint64_t> walk;
    std::uint64_t v = start;
    while (v != 0 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = image(v);
    }
    if (v == 0) {
      // walk ends at the vertex whose double is 0 mod t: a tree root
      const std::uint64_t root = walk.back();
      table.colors[root] = 0;
      frontier.push_back(root);
    } else if (state[v] == 1) {
      auto it = std::find(walk.begin(), walk.end(), v);
      std::vector<std::uint64_t> cycle(it, walk.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      for (std::size_t k = 0; k < cycle.size(); ++k) table.colors[cycle[k]] = static_cast<std::uint8_t>(k % 2);
      if (cycle.size() % 2 == 1) table.colors[cycle.back()] = 2;
      // cycle vertices become BFS sources in cycle order
      frontier.insert(frontier.end(), cycle.begin(), cycle.end());
    }
    for (auto w : walk) state[w] = 2;
  }

  while (!frontier.empty()) {
    const std::uint64_t v = frontier.front();
    frontier.pop_front();
    for (std::uint64_t p : preimages[v]) {
      if (table.colors[p] != kUncolored) continue;
      table.colors[p] = table.colors[v] == 0 ? 1 : 0;
      frontier.push_back(p);
    }
  }
  table.colors[0] = 0;
  return table;
}

}  // namespace

std::shared_ptr<const NuTable> nu(std::uint64_t t) {
  if (t < 2) throw DomainError("nu_t needs t >= 2");
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::shared_ptr<const NuTable>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(t); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const NuTable>(build_nu(t));
  std::lock_guard lock(mu);
  return cache.try_emplace(t, std::move(table)).first->second;
}

unsigned psi(const Rational& x) {
  if (x.is_zero()) throw DomainError("psi is undefined at 0");
  // one of num, den is odd, so the valuation difference has the parity of the sum
  return static_cast<unsigned>((two_adic_valuation(x.num()) + two_adic_valuation(x.den())) % 2);
}

unsigned PhiColor::index() const {
  if (!below_one) return tau;
  return 3u + 9u * tau + 3u * m_mod3 + nu_color;
}

PhiColor phi(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("phi needs x > 0, got " + x.str());
  PhiColor c;
  c.tau = static_cast<std::uint8_t>(tau(x));
  c.below_one = x < Rational(1);
  if (c.below_one) {
    const FactorialExpansion fe = factorial_expand(x);
    c.m_mod3 = static_cast<std::uint8_t>(fe.m % 3);
    c.nu_color = (*nu(fe.m))(fe.digits.back());
  }
  return c;
}

PhiPrimeColor phi_prime(const Rational& x) {
  if (x.is_zero()) throw DomainError("phi' is undefined at 0");
  return {x.sign() < 0, phi(x.abs())};
}

const char* to_string(ColorDomain d) {
  switch (d) {
    case ColorDomain::PositiveIntegers: return "positive integers";
    case ColorDomain::PositiveRationals: return "positive rationals";
    case ColorDomain::NonzeroRationals: return "nonzero rationals";
  }
  return "?";
}

Coloring::Coloring(std::string name, ColorDomain domain, std::size_t palette, std::size_t base, Rule rule)
    : name_(std::move(name)), domain_(domain), palette_(palette), base_(base), rule_(std::move(rule)) {
  if (palette_ == 0) throw PreconditionError("coloring palette must be non-empty");
}

Coloring Coloring::with_limit(std::uint64_t limit) const {
  if (domain_ != ColorDomain::PositiveIntegers)
    throw DomainError("only positive-integer colorings can be limited");
  Coloring out(*this);
  out.limit_ = limit;
  return out;
}

bool Coloring::in_domain(const Rational& x) const {
  switch (domain_) {
    case ColorDomain::PositiveIntegers:
      if (!x.is_integer() || x.sign() <= 0) return false;
      return limit_ == 0 || x <= Rational(static_cast<long long>(limit_));
    case ColorDomain::PositiveRationals: return x.sign() > 0;
    case ColorDomain::NonzeroRationals: return !x.is_zero();
  }
  return false;
}

std::size_t Coloring::operator()(const Rational& x) const {
  if (!in_domain(x))
    throw DomainError(x.str() + " is outside the domain of coloring '" + name_ + "' (" + to_string(domain_) + ")");
  return rule_(x);
}

Coloring product_coloring(const Coloring& c1, const Coloring& c2) {
  if (c1.domain() != c2.domain()) throw DomainError("product of colorings with different domains");
  const std::size_t p2 = c2.palette();
  return Coloring("(" + c1.name() + ")x(" + c2.name() + ")", c1.domain(), c1.palette() * p2, 0,
                  [c1, c2, p2](const Rational& x) { return (c1(x) - c1.base()) * p2 + (c2(x) - c2.base()); });
}

Coloring digit_class_coloring(std::uint64_t q) {
  if (!is_prime(q)) throw DomainError("digit coloring base " + std::to_string(q) + " is not prime");
  return Coloring("digit:q=" + std::to_string(q), ColorDomain::PositiveIntegers, q - 1, 1,
                  [q](const Rational& x) { return static_cast<std::size_t>(base_q_digit_decompose(q, x.num()).b); });
}

Coloring parity_coloring() {
  return Coloring("parity", ColorDomain::PositiveIntegers, 2, 0,
                  [](const Rational& x) { return static_cast<std::size_t>(mpz_odd_p(x.num().get_mpz_t()) ? 1 : 0); });
}

Coloring tau_coloring() {
  return Coloring("tau", ColorDomain::PositiveRationals, 3, 0, [](const Rational& x) { return std::size_t{tau(x)}; });
}

Coloring psi_coloring() {
  return Coloring("psi", ColorDomain::NonzeroRationals, 2, 0, [](const Rational& x) { return std::size_t{psi(x)}; });
}

Coloring phi_coloring() {
  return Coloring("phi", ColorDomain::PositiveRationals, 30, 0,
                  [](const Rational& x) { return std::size_t{phi(x).index()}; });
}

Coloring phi_prime_coloring() {
  return Coloring("phiprime", ColorDomain::NonzeroRationals, 60, 0,
                  [](const Rational& x) { return std::size_t{phi_prime(x).index()}; });
}

Coloring table_coloring(std::vector<std::size_t> colors, std::size_t palette) {
  for (auto c : colors)
    if (c >= palette) throw PreconditionError("table color out of palette range");
  const std::uint64_t n = colors.size();
  return Coloring("table", ColorDomain::PositiveIntegers, palette, 0,
                  [colors = std::move(colors)](const Rational& x) { return colors[x.num().get_ui() - 1]; })
      .with_limit(n);
}

Coloring lookup_coloring(std::string_view id) {
  if (id.starts_with("digit:q=")) {
    const std::string_view tail = id.substr(8);
    std::uint64_t q = 0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), q);
    if (ec != std::errc() || ptr != tail.data() + tail.size() || tail.empty())
      throw UnknownIdError("bad digit coloring id: " + std::string(id));
    return digit_class_coloring(q);
  }
  if (id == "tau") return tau_coloring();
  if (id == "phi") return phi_coloring();
  if (id == "phiprime") return phi_prime_coloring();
  if (id == "psi") return psi_coloring();
  if (id == "parity") return parity_coloring();
  throw UnknownIdError("unknown coloring id: " + std::string(id));
}

std::vector<std::string> coloring_ids() { return {"digit:q=<prime>", "tau", "phi", "phiprime", "psi", "parity"}; }

std::string nu_tables_csv(std::uint64_t t_max) {
  std::ostringstream out;
  out << "t,i,color\n";
  for (std::uint64_t t = 2; t <= t_max; ++t) {
    const auto table = nu(t);
    for (std::uint64_t i = 1; i < t; ++i) out << t << ',' << i << ',' << unsigned{(*table)(i)} << '\n';
  }
  return out.str();
}

}  // namespace prkit
