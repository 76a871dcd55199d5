#include "oracles.hpp"

#include <algorithm>

namespace alginv::oracle {

namespace {

unsigned degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

// Lex on exponent vectors: larger first entry wins.
bool lex_greater(const Exponents& a, const Exponents& b) { return a > b; }

Exponents leading(const TermMap& t) {
  Exponents best = t.begin()->first;
  for (const auto& [e, c] : t)
    if (lex_greater(e, best)) best = e;
  return best;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents add(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents sub(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

void axpy(TermMap& acc, const Rational& c, const Exponents& shift, const TermMap& g) {
  for (const auto& [e, k] : g) {
    auto key = add(e, shift);
    Rational v = acc[key] + c * k;
    if (v == 0) acc.erase(key);
    else acc[key] = v;
  }
}

// Full reduction of f by gs under lex.
TermMap reduce(TermMap f, const std::vector<TermMap>& gs) {
  TermMap rem;
  while (!f.empty()) {
    Exponents lt = leading(f);
    Rational lc = f[lt];
    bool done = false;
    for (const auto& g : gs) {
      Exponents lg = leading(g);
      if (!divides(lg, lt)) continue;
      axpy(f, -lc / g.at(lg), sub(lt, lg), g);
      done = true;
      break;
    }
    if (!done) {
      rem[lt] = lc;
      f.erase(lt);
    }
  }
  return rem;
}

TermMap s_poly(const TermMap& f, const TermMap& g) {
  Exponents lf = leading(f), lg = leading(g);
  Exponents l(lf.size());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(lf[i], lg[i]);
  TermMap s;
  axpy(s, 1 / f.at(lf), sub(l, lf), f);
  axpy(s, -1 / g.at(lg), sub(l, lg), g);
  return s;
}

void make_monic(TermMap& t) {
  Rational lc = t[leading(t)];
  for (auto& [e, c] : t) c /= lc;
}

std::vector<Exponents> exponents_up_to(std::size_t n, unsigned d) {
  std::vector<Exponents> out{Exponents(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Exponents> next;
    for (const auto& e : out)
      for (unsigned k = 0; degree(e) + k <= d; ++k) {
        auto f = e;
        f[i] = k;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TermMap terms_of(const Polynomial& p) {
  TermMap t;
  for (const auto& term : p.terms()) t[term.mono.exponents()] = term.coeff;
  return t;
}

Polynomial to_polynomial(const TermMap& t, const RingPtr& ring) {
  std::vector<Term> terms;
  for (const auto& [e, c] : t) terms.push_back({Monomial(std::vector<std::uint32_t>(e.begin(), e.end())), c});
  return Polynomial::from_terms(ring, std::move(terms));
}

bool truncated_membership(const Polynomial& p, const std::vector<Polynomial>& gens, unsigned d) {
  if (p.is_zero()) return true;
  const std::size_t n = p.ring()->nvars();
  // Echelon rows keyed by pivot exponent; each row is a TermMap whose pivot
  // coefficient is 1.
  std::map<Exponents, TermMap> rows;
  auto reduce_row = [&](TermMap r) {
    bool changed = true;
    while (changed && !r.empty()) {
      changed = false;
      for (auto it = r.begin(); it != r.end(); ++it) {
        auto row = rows.find(it->first);
        if (row == rows.end()) continue;
        Rational c = it->second;
        axpy(r, -c, Exponents(n, 0), row->second);
        changed = true;
        break;
      }
    }
    return r;
  };
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    auto gt = terms_of(g);
    const unsigned gd = static_cast<unsigned>(g.degree());
    if (gd > d) continue;
    for (const auto& m : exponents_up_to(n, d - gd)) {
      TermMap r;
      axpy(r, 1, m, gt);
      r = reduce_row(std::move(r));
      if (r.empty()) continue;
      Exponents piv = r.begin()->first;
      Rational c = r.begin()->second;
      for (auto& [e, k] : r) k /= c;
      rows.emplace(piv, std::move(r));
    }
  }
  return reduce_row(terms_of(p)).empty();
}

std::vector<TermMap> naive_lex_reduced_basis(const std::vector<Polynomial>& gens) {
  std::vector<TermMap> g;
  for (const auto& p : gens)
    if (!p.is_zero()) g.push_back(terms_of(p));
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < g.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < g.size() && !grew; ++j) {
        TermMap r = reduce(s_poly(g[i], g[j]), g);
        if (!r.empty()) {
          g.push_back(std::move(r));
          grew = true;
        }
      }
  }
  // Minimal: drop elements whose leading term is divisible by another's.
  std::vector<TermMap> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      Exponents li = leading(g[i]), lj = leading(g[j]);
      if (divides(lj, li) && (li != lj || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<TermMap> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    TermMap lt{{leading(minimal[i]), minimal[i][leading(minimal[i])]}};
    TermMap tail = minimal[i];
    tail.erase(leading(minimal[i]));
    TermMap r = reduce(tail, others);
    for (const auto& [e, c] : lt) r[e] = c;
    minimal[i] = std::move(r);
  }
  for (auto& t : minimal) make_monic(t);
  std::sort(minimal.begin(), minimal.end(),
            [](const TermMap& a, const TermMap& b) { return lex_greater(leading(a), leading(b)); });
  return minimal;
}

}  // namespace alginv::oracle
