#include "alginv/dynamics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "alginv/groebner.hpp"

namespace alginv {

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(RingPtr ring, std::vector<Polynomial> drifts)
    : ring_(std::move(ring)), drifts_(std::move(drifts)) {
  if (drifts_.size() != ring_->nvars())
    throw std::invalid_argument("vector field needs exactly one drift per state variable");
  const auto& u = ring_->universe();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.is_parameter(i))
      throw std::invalid_argument("vector field ring contains parameter '" + u.symbol(i).name + "'");
    if (drifts_[i].ring() == nullptr) {
      drifts_[i] = Polynomial(ring_);
    } else if (!(*drifts_[i].ring() == *ring_)) {
      drifts_[i] = drifts_[i].in_ring(ring_);
    }
  }
}

const Polynomial& VectorField::drift(std::string_view name) const {
  return drifts_.at(ring_->universe().index_of(name));
}

VectorField VectorField::in_ring(const RingPtr& ring) const {
  std::vector<Polynomial> d(ring->nvars());
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    const auto& name = ring->universe().symbol(i).name;
    d[i] = drift(name).in_ring(ring);
  }
  return VectorField(ring, std::move(d));
}

VectorField with_ghost_variables(const VectorField& field, const std::vector<std::string>& ghosts) {
  auto syms = field.ring()->universe().symbols();
  for (const auto& g : ghosts) syms.push_back({g, SymbolKind::state});
  auto universe = SymbolUniverse::create(std::move(syms));
  // Keep the order family of the original ring.
  const auto& blocks = field.ring()->order().blocks();
  const BlockKind kind = blocks.empty() ? BlockKind::grevlex : blocks.front().kind;
  auto order = kind == BlockKind::lex ? MonomialOrder::lex(*universe) : MonomialOrder::grevlex(*universe);
  auto ring = PolyRing::create(universe, order);
  std::vector<Polynomial> drifts;
  for (const auto& d : field.drifts()) drifts.push_back(d.in_ring(ring));
  for (std::size_t k = 0; k < ghosts.size(); ++k) drifts.emplace_back(ring);
  return VectorField(ring, std::move(drifts));
}

Polynomial lie_derivative(const Polynomial& p, const VectorField& field) {
  if (!(*p.ring() == *field.ring())) {
    if (!p.ring()->same_universe(*field.ring()))
      throw UniverseMismatch("polynomial mentions symbols outside the vector field");
    return kernels::lie_derivative_of(p.in_ring(field.ring()), field.drifts());
  }
  return kernels::lie_derivative_of(p, field.drifts());
}

Polynomial lie_iterate(const Polynomial& p, const VectorField& field, unsigned times) {
  Polynomial q = p;
  for (unsigned j = 0; j < times; ++j) q = lie_derivative(q, field);
  return q;
}

// ---------------------------------------------------------------- Template

Template::Template(RingPtr ring, std::vector<std::string> parameters,
                   std::vector<Polynomial> components)
    : ring_(std::move(ring)), params_(std::move(parameters)), components_(std::move(components)) {
  if (params_.size() != components_.size())
    throw std::invalid_argument("template needs one component per parameter");
  for (auto& c : components_) {
    if (c.ring() == nullptr) c = Polynomial(ring_);
    if (!(*c.ring() == *ring_)) throw UniverseMismatch("template component over a different ring");
  }
}

Template Template::from_polynomial(const Polynomial& p, const RingPtr& state_ring) {
  const auto& u = p.ring()->universe();
  std::vector<std::size_t> params = u.parameter_indices();
  std::vector<std::string> names;
  std::vector<std::size_t> slot(u.size(), SIZE_MAX);
  for (std::size_t k = 0; k < params.size(); ++k) {
    names.push_back(u.symbol(params[k]).name);
    slot[params[k]] = k;
  }
  std::vector<std::size_t> target(u.size(), SIZE_MAX);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.is_parameter(i)) continue;
    auto t = state_ring->universe().find(u.symbol(i).name);
    if (!t) throw UnboundSymbol("template symbol '" + u.symbol(i).name + "' is not a state variable");
    target[i] = *t;
  }
  std::vector<std::vector<Term>> parts(params.size());
  for (const auto& t : p.terms()) {
    std::size_t which = SIZE_MAX;
    unsigned pdeg = 0;
    Monomial m(state_ring->nvars());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (u.is_parameter(i)) {
        pdeg += t.mono[i];
        which = slot[i];
      } else {
        m.set(target[i], t.mono[i]);
      }
    }
    if (pdeg != 1)
      throw std::invalid_argument(pdeg == 0 ? "template term '" + Polynomial::monomial(p.ring(), t.mono, t.coeff).to_string() +
                                                  "' has no parameter (constant terms are not allowed in coefficients)"
                                            : "template is not linear in its parameters");
    parts[which].push_back({std::move(m), t.coeff});
  }
  std::vector<Polynomial> comps;
  comps.reserve(parts.size());
  for (auto& terms : parts) comps.push_back(Polynomial::from_terms(state_ring, std::move(terms)));
  return Template(state_ring, std::move(names), std::move(comps));
}

bool Template::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& c) { return c.is_zero(); });
}

Polynomial Template::instantiate(const Vector& valuation) const {
  if (valuation.size() != params_.size())
    throw std::invalid_argument("valuation must bind every template parameter");
  std::vector<Term> terms;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (valuation[k] == 0) continue;
    for (const auto& t : components_[k].terms()) terms.push_back({t.mono, t.coeff * valuation[k]});
  }
  return Polynomial::from_terms(ring_, std::move(terms));
}

LinearForm Template::coefficient(const Monomial& m) const {
  LinearForm f;
  for (std::size_t k = 0; k < components_.size(); ++k) f.add(k, components_[k].coefficient(m));
  return f;
}

std::vector<std::pair<Monomial, LinearForm>> Template::terms() const {
  std::unordered_map<Monomial, LinearForm, MonomialHash> acc;
  for (std::size_t k = 0; k < components_.size(); ++k)
    for (const auto& t : components_[k].terms()) acc[t.mono].add(k, t.coeff);
  std::vector<std::pair<Monomial, LinearForm>> out;
  for (auto& [m, f] : acc)
    if (!f.is_zero()) out.emplace_back(m, std::move(f));
  const auto& ord = ring_->order();
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });
  return out;
}

Polynomial Template::to_polynomial(const RingPtr& joint) const {
  std::vector<Term> terms;
  const auto& ju = joint->universe();
  std::vector<std::size_t> state_map(ring_->nvars());
  for (std::size_t i = 0; i < ring_->nvars(); ++i)
    state_map[i] = ju.index_of(ring_->universe().symbol(i).name);
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const std::size_t pk = ju.index_of(params_[k]);
    for (const auto& t : components_[k].terms()) {
      Monomial m(ju.size());
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (t.mono[i]) m.set(state_map[i], t.mono[i]);
      m.set(pk, 1);
      terms.push_back({std::move(m), t.coeff});
    }
  }
  return Polynomial::from_terms(joint, std::move(terms));
}

std::string Template::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (components_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    const auto& c = components_[k];
    if (c.size() == 1 && c.leading().mono.is_one()) {
      out += alginv::to_string(c.leading_coeff()) + "*" + params_[k];
    } else {
      out += params_[k] + "*(" + c.to_string() + ")";
    }
  }
  return out.empty() ? "0" : out;
}

std::string Template::to_string_by_monomial() const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::string out;
  for (const auto& [m, f] : ts) {
    if (!out.empty()) out += " + ";
    std::string form = f.to_string(params_);
    const bool single = f.coefficients().size() == 1 && f.coefficients().begin()->second == 1;
    if (m.is_one()) {
      out += single ? form : "(" + form + ")";
    } else {
      out += (single ? form : "(" + form + ")") + "*" + alginv::to_string(m, ring_->universe());
    }
  }
  return out;
}

RingPtr joint_ring(const std::vector<std::string>& parameters, const RingPtr& state_ring,
                   BlockKind state_kind) {
  std::vector<Symbol> syms;
  for (const auto& a : parameters) syms.push_back({a, SymbolKind::parameter});
  for (const auto& s : state_ring->universe().symbols()) syms.push_back({s.name, SymbolKind::state});
  auto u = SymbolUniverse::create(std::move(syms));
  return PolyRing::create(u, MonomialOrder::block_elimination(*u, state_kind));
}

Template complete_template(const RingPtr& ring, const std::vector<std::size_t>& vars, unsigned k,
                           const std::string& prefix) {
  auto monos = monomials_up_to_degree(*ring, vars, k);
  std::stable_sort(monos.begin(), monos.end(),
                   [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<std::string> names;
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    names.push_back(prefix + std::to_string(i + 1));
    comps.push_back(Polynomial::monomial(ring, monos[i]));
  }
  return Template(ring, std::move(names), std::move(comps));
}

Template lie_template(const Template& t, const VectorField& field, Exec exec) {
  if (!(*t.ring() == *field.ring())) throw UniverseMismatch("template and vector field rings differ");
  return Template(t.ring(), t.parameters(),
                  kernels::lie_derivatives(t.components(), field.drifts(), exec));
}

Template template_remainder(const Template& t, std::span<const Polynomial> groebner_basis, Exec exec) {
  return Template(t.ring(), t.parameters(),
                  kernels::normal_forms(t.components(), groebner_basis, exec));
}

std::vector<LinearForm> zero_constraints(const Template& r) {
  std::vector<LinearForm> out;
  for (auto& [m, f] : r.terms()) out.push_back(std::move(f));
  return out;
}

ResultTemplate result_template(const Template& t, const Subspace& valuations,
                               const std::string& prefix) {
  if (valuations.ambient_dim() != t.nparams())
    throw std::invalid_argument("valuation space does not match the template's parameter count");
  const std::size_t d = valuations.dim();
  std::vector<Polynomial> instances;
  for (std::size_t i = 0; i < d; ++i) instances.push_back(t.instantiate(valuations.basis()[i]));

  // Column i holds the coefficients of instance i; its pivot columns pick a
  // basis of t[V] among the instances.
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  Matrix coeffs;
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& term : instances[i].terms()) {
      auto [it, inserted] = row_of.try_emplace(term.mono, coeffs.size());
      if (inserted) coeffs.emplace_back(d, Rational(0));
      coeffs[it->second][i] = term.coeff;
    }
  }
  std::vector<std::string> names;
  std::vector<Polynomial> comps;
  Matrix basis;
  for (auto i : row_echelon(std::move(coeffs), d).pivots) {
    names.push_back(prefix + std::to_string(names.size() + 1));
    comps.push_back(std::move(instances[i]));
    basis.push_back(valuations.basis()[i]);
  }
  return {Template(t.ring(), std::move(names), std::move(comps)), std::move(basis)};
}

}  // namespace alginv
