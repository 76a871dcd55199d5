#include "alginv/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace alginv {

// ---------------------------------------------------------------- universe

SymbolUniverse::SymbolUniverse(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& name = symbols_[i].name;
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    if (!index_.emplace(name, i).second)
      throw std::invalid_argument("duplicate symbol '" + name + "'");
  }
}

UniversePtr SymbolUniverse::create(std::vector<Symbol> symbols) {
  return UniversePtr(new SymbolUniverse(std::move(symbols)));
}

UniversePtr SymbolUniverse::states(const std::vector<std::string>& names) {
  std::vector<Symbol> syms;
  syms.reserve(names.size());
  for (const auto& n : names) syms.push_back({n, SymbolKind::state});
  return create(std::move(syms));
}

std::optional<std::size_t> SymbolUniverse::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SymbolUniverse::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnboundSymbol("unknown symbol '" + std::string(name) + "'");
}

std::vector<std::size_t> SymbolUniverse::state_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (!is_parameter(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> SymbolUniverse::parameter_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (is_parameter(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------- monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r(o);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  r.degree_ = o.degree_ - degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], o.exps_[i]);
    d += r.exps_[i];
  }
  r.degree_ = d;
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && o.exps_[i] != 0) return false;
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string to_string(const Monomial& m, const SymbolUniverse& u) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += u.symbol(i).name;
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

// ---------------------------------------------------------------- order

MonomialOrder::MonomialOrder(std::vector<OrderBlock> blocks, std::string name)
    : blocks_(std::move(blocks)), name_(std::move(name)) {}

MonomialOrder MonomialOrder::lex(const SymbolUniverse& u) {
  OrderBlock b;
  b.kind = BlockKind::lex;
  b.vars = u.parameter_indices();
  auto s = u.state_indices();
  b.vars.insert(b.vars.end(), s.begin(), s.end());
  return MonomialOrder({b}, "lex");
}

MonomialOrder MonomialOrder::grevlex(const SymbolUniverse& u) {
  OrderBlock b;
  b.kind = BlockKind::grevlex;
  b.vars.resize(u.size());
  std::iota(b.vars.begin(), b.vars.end(), std::size_t{0});
  return MonomialOrder({b}, "grevlex");
}

MonomialOrder MonomialOrder::block_elimination(const SymbolUniverse& u, BlockKind state_kind) {
  std::vector<OrderBlock> blocks;
  auto params = u.parameter_indices();
  if (!params.empty()) blocks.push_back({params, BlockKind::lex});
  auto states = u.state_indices();
  if (!states.empty()) blocks.push_back({states, state_kind});
  return MonomialOrder(std::move(blocks),
                       state_kind == BlockKind::lex ? "elim-lex" : "elim-grevlex");
}

MonomialOrder MonomialOrder::lex_with_precedence(const SymbolUniverse& u,
                                                 const std::vector<std::string>& precedence) {
  if (precedence.size() != u.size())
    throw std::invalid_argument("precedence list must name every symbol exactly once");
  OrderBlock b;
  b.kind = BlockKind::lex;
  std::vector<bool> seen(u.size(), false);
  for (const auto& n : precedence) {
    auto i = u.index_of(n);
    if (seen[i]) throw std::invalid_argument("symbol '" + n + "' repeated in precedence list");
    seen[i] = true;
    b.vars.push_back(i);
  }
  return MonomialOrder({b}, "lex");
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& blk : blocks_) {
    if (blk.kind == BlockKind::lex) {
      for (auto v : blk.vars) {
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      }
    } else {
      std::uint64_t da = 0, db = 0;
      if (blocks_.size() == 1) {
        da = a.degree();
        db = b.degree();
      } else {
        for (auto v : blk.vars) {
          da += a[v];
          db += b[v];
        }
      }
      if (da != db) return da > db ? 1 : -1;
      for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it) {
        if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
      }
    }
  }
  return 0;
}

bool MonomialOrder::eliminates_parameters(const SymbolUniverse& u) const {
  const auto nparams = u.parameter_indices().size();
  std::size_t covered = 0;
  for (const auto& blk : blocks_) {
    if (covered == nparams) return true;
    if (blk.kind == BlockKind::grevlex) {
      // A graded block mixing parameters with state variables never eliminates.
      for (auto v : blk.vars)
        if (!u.is_parameter(v)) return false;
      covered += blk.vars.size();
      continue;
    }
    for (auto v : blk.vars) {
      if (covered == nparams) return true;
      if (!u.is_parameter(v)) return false;
      ++covered;
    }
  }
  return covered == nparams;
}

// ---------------------------------------------------------------- ring

RingPtr PolyRing::create(UniversePtr universe, MonomialOrder order) {
  std::vector<int> seen(universe->size(), 0);
  for (const auto& b : order.blocks())
    for (auto v : b.vars) {
      if (v >= universe->size()) throw std::invalid_argument("order refers to unknown symbol");
      ++seen[v];
    }
  for (auto s : seen)
    if (s != 1) throw std::invalid_argument("order must mention every symbol exactly once");
  return RingPtr(new PolyRing(std::move(universe), std::move(order)));
}

bool PolyRing::same_universe(const PolyRing& o) const {
  return universe_ == o.universe_ || *universe_ == *o.universe_;
}

bool PolyRing::operator==(const PolyRing& o) const {
  return this == &o || (same_universe(o) && order_ == o.order_);
}

// ---------------------------------------------------------------- polynomial

namespace {

std::vector<Term> sorted_from_map(std::unordered_map<Monomial, Rational, MonomialHash>& acc,
                                  const MonomialOrder& order) {
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
  return terms;
}

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  Monomial m(ring->nvars());
  m.set(ring->universe().index_of(name), 1);
  return monomial(std::move(ring), std::move(m));
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, const Rational& c) {
  if (m.nvars() != ring->nvars()) throw std::invalid_argument("monomial arity mismatch");
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms.size());
  for (auto& t : terms) {
    if (t.mono.nvars() != ring->nvars()) throw std::invalid_argument("monomial arity mismatch");
    acc[t.mono] += t.coeff;
  }
  Polynomial p(ring);
  p.terms_ = sorted_from_map(acc, ring->order());
  return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return static_cast<int>(d);
}

Rational Polynomial::coefficient(const Monomial& m) const {
  const auto& ord = ring_->order();
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [&](const Term& t, const Monomial& x) {
    return ord.compare(t.mono, x) > 0;
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

void Polynomial::require_same_universe(const Polynomial& o) const {
  if (!ring_ || !o.ring_) throw UniverseMismatch("operation on a detached polynomial");
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
    throw UniverseMismatch("polynomials belong to different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_universe(o);
  const auto& ord = ring_->order();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ord.compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + o.terms_[j].coeff;
      if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::sub_mul_term(const Rational& c, const Monomial& m,
                                    const Polynomial& g) const {
  require_same_universe(g);
  const auto& ord = ring_->order();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  auto shifted = [&](std::size_t k) { return Term{g.terms_[k].mono * m, -c * g.terms_[k].coeff}; };
  std::optional<Term> pending;
  while (i < terms_.size() && j < g.terms_.size()) {
    if (!pending) pending = shifted(j);
    int cmp = ord.compare(terms_[i].mono, pending->mono);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back(std::move(*pending));
      pending.reset();
      ++j;
    } else {
      Rational s = terms_[i].coeff + pending->coeff;
      if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
      pending.reset();
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  if (pending) {
    r.terms_.push_back(std::move(*pending));
    ++j;
  }
  for (; j < g.terms_.size(); ++j) r.terms_.push_back(shifted(j));
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_universe(o);
  if (terms_.empty() || o.terms_.empty()) return Polynomial(ring_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc[a.mono * b.mono] += a.coeff * b.coeff;
  Polynomial r(ring_);
  r.terms_ = sorted_from_map(acc, ring_->order());
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  // Multiplicative orders preserve the sorted sequence.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_[0].coeff == 1) return *this;
  Rational inv = 1 / terms_[0].coeff;
  return scaled(inv);
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (terms_[0].coeff < 0) factor = -factor;
  return scaled(factor);
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({std::move(m), t.coeff * e});
  }
  // Lowering one exponent can reorder terms under graded orders, so re-sort.
  return from_terms(ring_, std::move(out));
}

namespace {

Rational eval_monomial(const Monomial& m, std::span<const Rational> values) {
  Rational r = 1;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    for (std::uint32_t k = 0; k < m[i]; ++k) r *= values[i];
  }
  return r;
}

}  // namespace

Rational Polynomial::evaluate(std::span<const Rational> values) const {
  if (values.size() != ring_->nvars()) throw std::invalid_argument("evaluation point arity mismatch");
  Rational sum = 0;
  for (const auto& t : terms_) sum += t.coeff * eval_monomial(t.mono, values);
  return sum;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  if (terms_.empty()) return 0;
  const auto& u = ring_->universe();
  std::vector<Rational> values(u.size(), 0);
  for (auto v : support()) {
    auto it = point.find(u.symbol(v).name);
    if (it == point.end()) throw UnboundSymbol("symbol '" + u.symbol(v).name + "' is not bound");
    values[v] = it->second;
  }
  return evaluate(values);
}

Polynomial Polynomial::substitute(const std::map<std::string, Rational>& bindings,
                                  RingPtr target) const {
  const auto& u = ring_->universe();
  const auto& tu = target->universe();
  std::vector<std::optional<Rational>> value(u.size());
  std::vector<std::optional<std::size_t>> map_to(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (auto it = bindings.find(u.symbol(i).name); it != bindings.end()) value[i] = it->second;
    map_to[i] = tu.find(u.symbol(i).name);
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    Monomial m(tu.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto e = t.mono[i];
      if (e == 0) continue;
      if (value[i]) {
        for (std::uint32_t k = 0; k < e; ++k) c *= *value[i];
      } else if (map_to[i]) {
        m.set(*map_to[i], e);
      } else {
        throw UnboundSymbol("symbol '" + u.symbol(i).name + "' is neither bound nor in the target ring");
      }
    }
    if (c != 0) out.push_back({std::move(m), std::move(c)});
  }
  return from_terms(std::move(target), std::move(out));
}

Polynomial Polynomial::in_ring(RingPtr target) const {
  if (ring_ == target) return *this;
  return substitute({}, std::move(target));
}

bool Polynomial::uses(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var] != 0) return true;
  return false;
}

std::vector<std::size_t> Polynomial::support() const {
  std::vector<std::size_t> out;
  if (terms_.empty()) return out;
  for (std::size_t v = 0; v < ring_->nvars(); ++v)
    if (uses(v)) out.push_back(v);
  return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (terms_.empty()) return true;
  require_same_universe(o);
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& u = ring_->universe();
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.coeff < 0;
    Rational mag = neg ? Rational(-t.coeff) : t.coeff;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += alginv::to_string(mag);
    } else if (mag == 1) {
      out += alginv::to_string(t.mono, u);
    } else {
      out += alginv::to_string(mag) + "*" + alginv::to_string(t.mono, u);
    }
  }
  return out;
}

std::vector<Monomial> monomials_up_to_degree(const PolyRing& ring,
                                             const std::vector<std::size_t>& vars, unsigned k) {
  std::vector<Monomial> out;
  Monomial cur(ring.nvars());
  // Depth-first over exponent assignments of `vars` with bounded total degree.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
    if (pos == vars.size()) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur.set(vars[pos], e);
      rec(pos + 1, left - e);
    }
    cur.set(vars[pos], 0);
  };
  rec(0, k);
  const auto& ord = ring.order();
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; });
  return out;
}

}  // namespace alginv
