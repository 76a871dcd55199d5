#pragma once

// Polynomial vector fields, Lie derivatives and parameterised templates.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alginv/kernels.hpp"
#include "alginv/linalg.hpp"
#include "alginv/poly.hpp"

namespace alginv {

// x' = F(x): one drift per symbol of the state ring, in universe order.
// Ghost variables are ordinary state variables whose drift is zero.
class VectorField {
 public:
  VectorField(RingPtr ring, std::vector<Polynomial> drifts);

  const RingPtr& ring() const { return ring_; }
  std::size_t dimension() const { return drifts_.size(); }
  std::span<const Polynomial> drifts() const { return drifts_; }
  const Polynomial& drift(std::size_t var) const { return drifts_.at(var); }
  const Polynomial& drift(std::string_view name) const;

  // Same dynamics over `ring`, whose universe must list the same symbols.
  VectorField in_ring(const RingPtr& ring) const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> drifts_;
};

// Appends zero-drift variables; returns the field over a new universe.
VectorField with_ghost_variables(const VectorField& field, const std::vector<std::string>& ghosts);

Polynomial lie_derivative(const Polynomial& p, const VectorField& field);
Polynomial lie_iterate(const Polynomial& p, const VectorField& field, unsigned times);

// A polynomial whose coefficients are linear forms in named parameters,
// stored as sum_k a_k * components[k] with parameter-free components over the
// state ring.
class Template {
 public:
  Template() = default;
  Template(RingPtr ring, std::vector<std::string> parameters, std::vector<Polynomial> components);

  // Reads a polynomial over a joint ring (parameters + state symbols) that is
  // linear and homogeneous in the parameters.
  static Template from_polynomial(const Polynomial& p, const RingPtr& state_ring);

  const RingPtr& ring() const { return ring_; }
  std::size_t nparams() const { return params_.size(); }
  const std::vector<std::string>& parameters() const { return params_; }
  const std::vector<Polynomial>& components() const { return components_; }
  bool is_zero() const;

  Polynomial instantiate(const Vector& valuation) const;
  LinearForm coefficient(const Monomial& m) const;
  // (monomial, coefficient form) pairs, monomials descending, zero forms dropped.
  std::vector<std::pair<Monomial, LinearForm>> terms() const;

  // Embedding into Q[a, x]; `joint` must contain the parameters and states.
  Polynomial to_polynomial(const RingPtr& joint) const;

  // "b1*(x - y) + b2*(x^2 - x*y)".
  std::string to_string() const;
  // "(a4 + a5 + a6)*y^2 + (a2 + a3)*y + a1".
  std::string to_string_by_monomial() const;

 private:
  RingPtr ring_;
  std::vector<std::string> params_;
  std::vector<Polynomial> components_;
};

// Universe listing `parameters` (kind parameter) followed by the state
// symbols of `state_ring`, ordered with the parameters eliminated first.
RingPtr joint_ring(const std::vector<std::string>& parameters, const RingPtr& state_ring,
                   BlockKind state_kind = BlockKind::lex);

// One fresh parameter per monomial of degree <= k over `vars`, numbered by
// ascending degree and then by descending monomial order.
Template complete_template(const RingPtr& ring, const std::vector<std::size_t>& vars, unsigned k,
                           const std::string& prefix = "a");

Template lie_template(const Template& t, const VectorField& field,
                      Exec exec = kernels::default_exec());

// t mod G. With G a Gröbner basis the remainder is linear in the parameters
// and commutes with instantiation.
Template template_remainder(const Template& t, std::span<const Polynomial> groebner_basis,
                            Exec exec = kernels::default_exec());

// One linear form per monomial of `r`; r[v] = 0 iff every form vanishes at v.
std::vector<LinearForm> zero_constraints(const Template& r);

struct ResultTemplate {
  Template result;  // parameters b1..bd
  Matrix basis;     // row i: valuation of the input parameters behind b_{i+1}
};

// Template over fresh parameters whose instances are exactly t[V]. Its
// components are the instances of those echelon basis vectors of V that are
// independent of the earlier ones, so d = dim t[V]; this is dim V unless some
// valuations in V instantiate t to the zero polynomial.
ResultTemplate result_template(const Template& t, const Subspace& valuations,
                               const std::string& prefix = "b");

}  // namespace alginv
