#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "alginv/algorithms.hpp"
#include "alginv/dynamics.hpp"
#include "alginv/groebner.hpp"
#include "alginv/parser.hpp"

namespace alginv::testing {

inline RingPtr ring_of(std::initializer_list<std::string> names, BlockKind kind = BlockKind::grevlex) {
  auto u = SymbolUniverse::states(std::vector<std::string>(names));
  return PolyRing::create(u, kind == BlockKind::lex ? MonomialOrder::lex(*u) : MonomialOrder::grevlex(*u));
}

inline Polynomial P(const RingPtr& ring, std::string_view text) { return parse_polynomial(text, ring); }

inline std::vector<Polynomial> Ps(const RingPtr& ring, std::initializer_list<std::string_view> texts) {
  std::vector<Polynomial> out;
  for (auto t : texts) out.push_back(parse_polynomial(t, ring));
  return out;
}

inline VectorField field_of(const RingPtr& ring, std::initializer_list<std::string_view> drifts) {
  return VectorField(ring, Ps(ring, drifts));
}

inline Template template_of(const RingPtr& ring, std::string_view expression,
                            const std::vector<std::string>& params) {
  return Template::from_polynomial(parse_polynomial(expression, joint_ring(params, ring)), ring);
}

inline Template complete(const RingPtr& ring, unsigned k) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(i);
  return complete_template(ring, vars, k);
}

// Membership both ways.
inline bool same_ideal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  if (a.empty() || b.empty()) {
    auto nonzero = [](const std::vector<Polynomial>& v) {
      for (const auto& p : v)
        if (!p.is_zero()) return true;
      return false;
    };
    return !nonzero(a) && !nonzero(b);
  }
  Ideal ia(a.front().ring(), a), ib(b.front().ring(), b);
  return ideal_contains(ia, ib) && ideal_contains(ib, ia);
}

// p lies in the Q-span of `basis`.
bool in_span(const Polynomial& p, const std::vector<Polynomial>& basis);

std::string join(const std::vector<Polynomial>& ps);

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  // Nonzero, small numerator and denominator.
  Rational coefficient() {
    int num = integer(1, 5) * (coin() ? 1 : -1);
    Rational q(num, integer(1, 3));
    q.canonicalize();
    return q;
  }

  Monomial monomial(std::size_t nvars, unsigned max_degree) {
    Monomial m(nvars);
    unsigned d = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
    for (unsigned k = 0; k < d; ++k) {
      auto v = static_cast<std::size_t>(integer(0, static_cast<int>(nvars) - 1));
      m.set(v, m[v] + 1);
    }
    return m;
  }

  Polynomial polynomial(const RingPtr& ring, unsigned max_degree, unsigned max_terms) {
    std::vector<Term> terms;
    unsigned n = static_cast<unsigned>(integer(1, static_cast<int>(max_terms)));
    for (unsigned k = 0; k < n; ++k) terms.push_back({monomial(ring->nvars(), max_degree), coefficient()});
    return Polynomial::from_terms(ring, std::move(terms));
  }

  Polynomial nonzero_polynomial(const RingPtr& ring, unsigned max_degree, unsigned max_terms) {
    for (;;) {
      auto p = polynomial(ring, max_degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }

  Vector valuation(std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = integer(-3, 3);
    return v;
  }

  RingPtr ring(std::size_t nvars) {
    static const char* names[] = {"x", "y", "z", "w", "u", "v"};
    std::vector<std::string> syms(names, names + nvars);
    auto u = SymbolUniverse::states(syms);
    return PolyRing::create(u, coin() ? MonomialOrder::lex(*u) : MonomialOrder::grevlex(*u));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace alginv::testing
