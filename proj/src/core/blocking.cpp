#include <algorithm>
#include <numeric>
#include <random>

#include "prkit/colorings.hpp"
#include "prkit/errors.hpp"
#include "prkit/search.hpp"

namespace prkit {

const char* to_string(BlockingProperty p) {
  switch (p) {
    case BlockingProperty::TauGap: return "tau-gap";
    case BlockingProperty::ChainStep: return "chain-step";
    case BlockingProperty::CarryBlocking: return "carry-blocking";
  }
  return "?";
}

BlockingProperty parse_blocking_property(std::string_view id) {
  if (id == "tau-gap") return BlockingProperty::TauGap;
  if (id == "chain-step") return BlockingProperty::ChainStep;
  if (id == "carry-blocking") return BlockingProperty::CarryBlocking;
  throw UnknownIdError("unknown blocking property: " + std::string(id));
}

std::vector<Rational> rationals_up_to_height(std::uint64_t H) {
  std::vector<Rational> out;
  for (std::uint64_t q = 1; q <= H; ++q)
    for (std::uint64_t p = 1; p <= H; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(mpz_class(static_cast<unsigned long>(p)), mpz_class(static_cast<unsigned long>(q)));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

BlockingReport scan_tau_gap(std::uint64_t H) {
  BlockingReport rep{BlockingProperty::TauGap, H, std::nullopt, 0};
  const auto values = rationals_up_to_height(H);
  std::vector<unsigned> taus;
  for (const auto& v : values) taus.push_back(tau(v));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Rational twice = values[i] * 2;
    const Rational four = values[i] * 4;
    for (auto j = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), twice) - values.begin());
         j < values.size(); ++j) {
      ++rep.checked;
      if (taus[i] == taus[j] && !(values[j] > four)) {
        rep.counterexample = std::vector<Rational>{values[i], values[j]};
        return rep;
      }
    }
  }
  return rep;
}

BlockingReport scan_chain_step(std::uint64_t H) {
  BlockingReport rep{BlockingProperty::ChainStep, H, std::nullopt, 0};
  const auto values = rationals_up_to_height(H);
  std::vector<PhiColor> phis;
  for (const auto& v : values) phis.push_back(phi(v));
  for (const auto& x : values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      ++rep.checked;
      const Rational& xp = values[j];
      const Rational twice = xp * 2;
      if (x > twice) continue;  // conclusion already holds
      const Rational y = x + twice;
      if (tau(y) != phis[j].tau) continue;
      if (phi(y) == phis[j]) {
        rep.counterexample = std::vector<Rational>{x, xp, y};
        return rep;
      }
    }
  }
  return rep;
}

BlockingReport scan_carry_blocking(std::uint64_t B) {
  if (B < 2 || B > 8) throw CapacityError("carry-blocking scan supports 2 <= B <= 8");
  BlockingReport rep{BlockingProperty::CarryBlocking, B, std::nullopt, 0};
  std::uint64_t F = 1;
  for (std::uint64_t t = 2; t <= B; ++t) F *= t;
  std::vector<unsigned> color(F, 0);
  std::vector<std::uint64_t> mdeg(F, 0);
  const mpz_class Fz(static_cast<unsigned long>(F));
  for (std::uint64_t k = 1; k < F; ++k) {
    const Rational x(mpz_class(static_cast<unsigned long>(k)), Fz);
    color[k] = phi(x).index();
    mdeg[k] = factorial_expand(x).m;
  }
  for (std::uint64_t kx = 1; kx < F; ++kx) {
    for (std::uint64_t kp = 1; kx + 2 * kp < F; ++kp) {
      ++rep.checked;
      if (mdeg[kp] <= mdeg[kx]) continue;
      const std::uint64_t ky = kx + 2 * kp;
      if (color[kx] == color[kp] && color[kp] == color[ky]) {
        auto r = [&](std::uint64_t k) { return Rational(mpz_class(static_cast<unsigned long>(k)), Fz); };
        rep.counterexample = std::vector<Rational>{r(kx), r(kp), r(ky)};
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

BlockingReport blocking_counterexample_search(BlockingProperty property, std::uint64_t bound) {
  if (bound < 1) throw PreconditionError("blocking search bound must be positive");
  switch (property) {
    case BlockingProperty::TauGap: return scan_tau_gap(bound);
    case BlockingProperty::ChainStep: return scan_chain_step(bound);
    case BlockingProperty::CarryBlocking: return scan_carry_blocking(bound);
  }
  throw UnknownIdError("unknown blocking property");
}

PropertySample sample_property(std::string_view property, std::uint64_t samples, std::uint64_t seed) {
  PropertySample out{std::string(property), samples, seed, 0, std::nullopt};
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  auto rational = [&](std::uint64_t height) {
    return Rational(mpz_class(static_cast<unsigned long>(uniform(1, height))),
                    mpz_class(static_cast<unsigned long>(uniform(1, height))));
  };
  auto fail = [&](std::vector<Rational> witness) {
    if (out.failures++ == 0) out.first_failure = std::move(witness);
  };

  if (property == "digit-roundtrip") {
    static const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (std::uint64_t s = 0; s < samples; ++s) {
      const std::uint64_t q = primes[uniform(0, std::size(primes) - 1)];
      const mpz_class x(static_cast<unsigned long>(uniform(1, std::uint64_t{1} << 62)));
      const auto d = base_q_digit_decompose(q, x);
      mpz_class ql, ql1;
      mpz_ui_pow_ui(ql.get_mpz_t(), q, d.l);
      ql1 = ql * static_cast<unsigned long>(q);
      if (d.b < 1 || d.b >= q || mpz_class(static_cast<unsigned long>(d.b)) * ql + d.a * ql1 != x)
        fail({Rational(x), Rational(static_cast<long long>(q))});
    }
  } else if (property == "tau-gap") {
    for (std::uint64_t s = 0; s < samples; ++s) {
      const Rational x = rational(1'000'000), y = rational(1'000'000);
      if (tau(x) == tau(y) && y >= x * 2 && !(y > x * 4)) fail({x, y});
    }
  } else if (property == "psi-doubling") {
    for (std::uint64_t s = 0; s < samples; ++s) {
      Rational x = rational(1'000'000);
      if (uniform(0, 1)) x = -x;
      if (psi(x * 2) == psi(x)) fail({x});
    }
  } else if (property == "phi-soundness") {
    for (std::uint64_t s = 0; s < samples; ++s) {
      const Rational x = rational(2'000);
      const PhiColor cx = phi(x);
      Rational y;
      do y = rational(2'000);
      while (!(phi(y) == cx));
      bool ok = tau(x) == tau(y) && (x < Rational(1)) == (y < Rational(1));
      if (ok && x < Rational(1)) {
        const auto ex = factorial_expand(x), ey = factorial_expand(y);
        ok = ex.m % 3 == ey.m % 3;
        if (ok && ex.m == ey.m) ok = (*nu(ex.m))(ex.digits.back()) == (*nu(ey.m))(ey.digits.back());
      }
      if (!ok) fail({x, y});
    }
  } else {
    throw UnknownIdError("unknown sampled property: " + std::string(property));
  }
  return out;
}

}  // namespace prkit
