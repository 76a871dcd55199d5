#include "alginv/groebner.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace alginv {

namespace {

struct DescendingOrder {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) > 0; }
};

// Working polynomial for reductions: an ordered map whose first entry is the
// current leading term.
class WorkingPoly {
 public:
  explicit WorkingPoly(const Polynomial& p) : terms_(DescendingOrder{&p.ring()->order()}) {
    for (const auto& t : p.terms()) terms_.emplace_hint(terms_.end(), t.mono, t.coeff);
  }
  bool empty() const { return terms_.empty(); }
  const Monomial& lead_monomial() const { return terms_.begin()->first; }
  const Rational& lead_coeff() const { return terms_.begin()->second; }
  Term pop_lead() {
    auto it = terms_.begin();
    Term t{it->first, std::move(it->second)};
    terms_.erase(it);
    return t;
  }
  // this -= c * m * g, where c * lm(g) * m cancels the current leading term.
  void cancel_lead(const Rational& c, const Monomial& m, const Polynomial& g) {
    terms_.erase(terms_.begin());
    auto gt = g.terms();
    for (std::size_t k = 1; k < gt.size(); ++k) {
      Monomial mono = gt[k].mono * m;
      Rational delta = -c * gt[k].coeff;
      auto [it, inserted] = terms_.try_emplace(std::move(mono), delta);
      if (!inserted) {
        it->second += delta;
        if (it->second == 0) terms_.erase(it);
      }
    }
  }

 private:
  std::map<Monomial, Rational, DescendingOrder> terms_;
};

template <typename DivisorAt>
Polynomial reduce_with(const Polynomial& p, std::size_t ndiv, DivisorAt divisor_at,
                       std::vector<std::vector<Term>>* quotients) {
  WorkingPoly work(p);
  std::vector<Term> rem;
  while (!work.empty()) {
    const Monomial& lm = work.lead_monomial();
    bool reduced = false;
    for (std::size_t i = 0; i < ndiv; ++i) {
      const Polynomial& g = divisor_at(i);
      if (!g.leading_monomial().divides(lm)) continue;
      Monomial shift = g.leading_monomial().quotient_of(lm);
      Rational c = work.lead_coeff() / g.leading_coeff();
      if (quotients) (*quotients)[i].push_back({shift, c});
      work.cancel_lead(c, shift, g);
      reduced = true;
      break;
    }
    if (!reduced) rem.push_back(work.pop_lead());
  }
  return Polynomial::from_sorted_terms(p.ring(), std::move(rem));
}

void check_divisors(const Polynomial& p, std::span<const Polynomial> divisors) {
  for (const auto& g : divisors) {
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (g.ring() != p.ring() && !(*g.ring() == *p.ring()))
      throw UniverseMismatch("divisor belongs to a different ring");
  }
}

}  // namespace

DivisionResult divide(const Polynomial& p, std::span<const Polynomial> divisors) {
  check_divisors(p, divisors);
  std::vector<std::vector<Term>> q(divisors.size());
  DivisionResult out;
  out.remainder = reduce_with(
      p, divisors.size(), [&](std::size_t i) -> const Polynomial& { return divisors[i]; }, &q);
  out.quotients.reserve(divisors.size());
  for (auto& terms : q) out.quotients.push_back(Polynomial::from_terms(p.ring(), std::move(terms)));
  return out;
}

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors) {
  check_divisors(p, divisors);
  return reduce_with(
      p, divisors.size(), [&](std::size_t i) -> const Polynomial& { return divisors[i]; }, nullptr);
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.mul_term(f.leading_monomial().quotient_of(l), 1 / f.leading_coeff());
  return a.sub_mul_term(1 / g.leading_coeff(), g.leading_monomial().quotient_of(l), g);
}

// ---------------------------------------------------------------- Buchberger

namespace {

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
  std::size_t serial;
};

class BuchbergerState {
 public:
  BuchbergerState(const RingPtr& ring, const GbOptions& options)
      : ring_(ring), options_(options), rng_(options.shuffle_pairs.value_or(0)) {}

  void insert(Polynomial h) {
    h = h.monic();
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    const Monomial& lh = polys_[hi].leading_monomial();

    // Gebauer-Möller update.
    std::vector<CriticalPair> candidates;
    for (auto g : active_) {
      candidates.push_back({g, hi, lh.lcm(polys_[g].leading_monomial()), 0});
    }
    // Chain criterion among the new pairs: pair a survives unless a later
    // candidate or an already kept one has an lcm dividing its own.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const auto& c = candidates[a];
      bool keep = lh.coprime(polys_[c.i].leading_monomial());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
          if (candidates[b].lcm.divides(c.lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(c.lcm)) keep = false;
      }
      if (keep) kept.push_back(c);
    }
    std::vector<CriticalPair> fresh;
    for (auto& c : kept) {
      // Product criterion: coprime leading monomials reduce to zero.
      if (lh.coprime(polys_[c.i].leading_monomial())) continue;
      c.serial = serial_++;
      fresh.push_back(std::move(c));
    }

    std::vector<CriticalPair> remaining;
    remaining.reserve(pairs_.size() + fresh.size());
    for (auto& p : pairs_) {
      const bool divisible = lh.divides(p.lcm);
      const bool chain_drop = divisible &&
                              !(lh.lcm(polys_[p.i].leading_monomial()) == p.lcm) &&
                              !(lh.lcm(polys_[p.j].leading_monomial()) == p.lcm);
      if (!chain_drop) remaining.push_back(std::move(p));
    }
    for (auto& f : fresh) remaining.push_back(std::move(f));
    pairs_ = std::move(remaining);

    std::vector<std::size_t> still_active;
    for (auto g : active_)
      if (!lh.divides(polys_[g].leading_monomial())) still_active.push_back(g);
    still_active.push_back(hi);
    active_ = std::move(still_active);
  }

  bool has_pairs() const { return !pairs_.empty(); }

  CriticalPair take_pair() {
    const auto& ord = ring_->order();
    std::size_t best = 0;
    if (options_.shuffle_pairs) {
      best = std::uniform_int_distribution<std::size_t>(0, pairs_.size() - 1)(rng_);
    } else {
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        int c = ord.compare(pairs_[k].lcm, pairs_[best].lcm);
        if (c < 0 || (c == 0 && pairs_[k].serial < pairs_[best].serial)) best = k;
      }
    }
    CriticalPair p = std::move(pairs_[best]);
    pairs_[best] = std::move(pairs_.back());
    pairs_.pop_back();
    return p;
  }

  void process(const CriticalPair& p) {
    if (++processed_ > options_.pair_budget)
      throw ResourceLimitExceeded("Gröbner basis computation exceeded the pair budget of " +
                                  std::to_string(options_.pair_budget));
    if (p.lcm.degree() > options_.degree_cap)
      throw ResourceLimitExceeded("Gröbner basis computation exceeded the degree cap of " +
                                  std::to_string(options_.degree_cap));
    Polynomial s = s_polynomial(polys_[p.i], polys_[p.j]);
    Polynomial r = reduce_active(s);
    if (!r.is_zero()) insert(std::move(r));
  }

  Polynomial reduce_active(const Polynomial& p) const {
    return reduce_with(
        p, active_.size(), [&](std::size_t k) -> const Polynomial& { return polys_[active_[k]]; },
        nullptr);
  }

  std::vector<Polynomial> basis() const {
    std::vector<Polynomial> out;
    out.reserve(active_.size());
    for (auto g : active_) out.push_back(polys_[g]);
    return out;
  }

 private:
  RingPtr ring_;
  GbOptions options_;
  std::vector<Polynomial> polys_;
  std::vector<std::size_t> active_;
  std::vector<CriticalPair> pairs_;
  std::size_t serial_ = 0;
  std::size_t processed_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<Polynomial> buchberger(std::vector<Polynomial> gens, const GbOptions& options) {
  std::erase_if(gens, [](const Polynomial& p) { return p.is_zero(); });
  if (gens.empty()) return {};
  const RingPtr ring = gens.front().ring();
  for (const auto& g : gens)
    if (g.ring() != ring && !(*g.ring() == *ring))
      throw UniverseMismatch("generators belong to different rings");

  BuchbergerState state(ring, options);
  for (auto& g : gens) {
    Polynomial r = state.reduce_active(g);
    if (!r.is_zero()) state.insert(std::move(r));
  }
  while (state.has_pairs()) state.process(state.take_pair());
  return state.basis();
}

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis) {
  std::erase_if(basis, [](const Polynomial& p) { return p.is_zero(); });
  if (basis.empty()) return basis;
  const auto& ord = basis.front().ring()->order();
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  // Minimal basis: drop elements whose leading monomial another one divides.
  std::vector<Polynomial> minimal;
  for (auto& g : basis) {
    bool redundant = false;
    for (const auto& h : minimal)
      if (h.leading_monomial().divides(g.leading_monomial())) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(g.monic());
  }
  // Tail-reduce each element against the others.
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Polynomial> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(minimal[l]);
    const Polynomial& g = minimal[k];
    Polynomial head = Polynomial::monomial(g.ring(), g.leading_monomial(), g.leading_coeff());
    Polynomial tail = g - head;
    reduced.push_back(head + normal_form(tail, others));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  return reduced;
}

std::vector<Polynomial> eliminate_parameters(const std::vector<Polynomial>& basis) {
  if (basis.empty()) return {};
  const auto& ring = *basis.front().ring();
  if (!ring.order().eliminates_parameters(ring.universe()))
    throw std::invalid_argument("monomial order '" + ring.order().name() +
                                "' is not an elimination order for the parameters");
  auto params = ring.universe().parameter_indices();
  std::vector<Polynomial> out;
  for (const auto& g : basis) {
    bool has_param = std::any_of(params.begin(), params.end(), [&](std::size_t v) { return g.uses(v); });
    if (!has_param) out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators, GbOptions options)
    : ring_(std::move(ring)),
      generators_(std::move(generators)),
      options_(options),
      cache_(std::make_shared<Cache>()) {
  for (auto& g : generators_) {
    if (g.ring() != ring_ && !(*g.ring() == *ring_))
      throw UniverseMismatch("ideal generator belongs to a different ring");
  }
  std::erase_if(generators_, [](const Polynomial& p) { return p.is_zero(); });
}

Ideal Ideal::from_reduced_basis(RingPtr ring, std::vector<Polynomial> basis, GbOptions options) {
  Ideal out(std::move(ring), basis, options);
  std::call_once(out.cache_->once, [&] { out.cache_->basis = std::move(basis); });
  return out;
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
  std::call_once(cache_->once,
                 [&] { cache_->basis = reduced_groebner_basis(generators_, options_); });
  return cache_->basis;
}

bool Ideal::contains(const Polynomial& p) const {
  if (p.is_zero()) return true;
  return normal_form(p.in_ring(ring_), groebner_basis()).is_zero();
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

Ideal Ideal::extended(const std::vector<Polynomial>& extra) const {
  std::vector<Polynomial> gens = generators_;
  std::vector<Polynomial> missing;
  for (const auto& p : extra) {
    gens.push_back(p);
    if (!contains(p)) missing.push_back(p);
  }
  if (missing.empty()) {
    Ideal out(ring_, std::move(gens), options_);
    out.cache_ = cache_;
    return out;
  }
  std::vector<Polynomial> seed = groebner_basis();
  seed.insert(seed.end(), missing.begin(), missing.end());
  auto basis = reduced_groebner_basis(std::move(seed), options_);
  Ideal out(ring_, std::move(gens), options_);
  std::call_once(out.cache_->once, [&] { out.cache_->basis = std::move(basis); });
  return out;
}

bool member(const Polynomial& p, const Ideal& ideal) { return ideal.contains(p); }

bool ideal_contains(const Ideal& outer, const Ideal& inner) {
  for (const auto& g : inner.generators())
    if (!outer.contains(g)) return false;
  return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  if (!(*a.ring() == *b.ring())) throw UniverseMismatch("ideals belong to different rings");
  const auto& ga = a.groebner_basis();
  const auto& gb = b.groebner_basis();
  if (ga.size() != gb.size()) return false;
  for (std::size_t i = 0; i < ga.size(); ++i)
    if (!(ga[i] == gb[i])) return false;
  return true;
}

}  // namespace alginv
