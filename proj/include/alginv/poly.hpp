#pragma once

// Exact sparse multivariate polynomials over Q.
//
// A Polynomial lives in a PolyRing: an immutable symbol universe paired with a
// monomial order. Terms are stored sorted by that order, leading term first,
// with no zero coefficients, so structural equality is polynomial equality.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "alginv/rational.hpp"

namespace alginv {

enum class SymbolKind { state, parameter };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::state;
  bool operator==(const Symbol&) const = default;
};

class SymbolUniverse;
using UniversePtr = std::shared_ptr<const SymbolUniverse>;

// Ordered, immutable set of uniquely named symbols. Adding a symbol means
// building a new universe.
class SymbolUniverse {
 public:
  static UniversePtr create(std::vector<Symbol> symbols);
  static UniversePtr states(const std::vector<std::string>& names);

  std::size_t size() const { return symbols_.size(); }
  const Symbol& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws if absent
  bool is_parameter(std::size_t i) const { return symbols_[i].kind == SymbolKind::parameter; }
  std::vector<std::size_t> state_indices() const;
  std::vector<std::size_t> parameter_indices() const;

  bool operator==(const SymbolUniverse& o) const { return symbols_ == o.symbols_; }

 private:
  explicit SymbolUniverse(std::vector<Symbol> symbols);
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Exponent vector indexed by universe position, with its total degree cached.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const { return degree_; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, std::uint32_t e);

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divides(o): returns o / *this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  bool operator==(const Monomial& o) const = default;
  std::size_t hash() const;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class BlockKind { lex, grevlex };

struct OrderBlock {
  std::vector<std::size_t> vars;  // precedence within the block, highest first
  BlockKind kind = BlockKind::lex;
  bool operator==(const OrderBlock&) const = default;
};

// Product of block orders. Blocks are compared left to right; within a block
// either lex or graded reverse lex over the listed precedence.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::vector<OrderBlock> blocks, std::string name);

  // Pure lex; parameters precede state variables, otherwise universe order.
  static MonomialOrder lex(const SymbolUniverse& u);
  static MonomialOrder grevlex(const SymbolUniverse& u);
  // Lex on the parameter block, which dominates every state variable, then
  // `state_kind` on the state variables.
  static MonomialOrder block_elimination(const SymbolUniverse& u, BlockKind state_kind);
  // Lex over an explicit precedence list (every symbol exactly once).
  static MonomialOrder lex_with_precedence(const SymbolUniverse& u,
                                           const std::vector<std::string>& precedence);

  // <0, 0, >0 as a is smaller, equal or greater than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  // True if some prefix of blocks covers exactly the parameters of `u`.
  bool eliminates_parameters(const SymbolUniverse& u) const;

  const std::vector<OrderBlock>& blocks() const { return blocks_; }
  const std::string& name() const { return name_; }
  bool operator==(const MonomialOrder& o) const { return blocks_ == o.blocks_; }

 private:
  std::vector<OrderBlock> blocks_;
  std::string name_;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  static RingPtr create(UniversePtr universe, MonomialOrder order);

  const SymbolUniverse& universe() const { return *universe_; }
  const UniversePtr& universe_ptr() const { return universe_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t nvars() const { return universe_->size(); }

  bool same_universe(const PolyRing& o) const;
  bool operator==(const PolyRing& o) const;

 private:
  PolyRing(UniversePtr universe, MonomialOrder order)
      : universe_(std::move(universe)), order_(std::move(order)) {}
  UniversePtr universe_;
  MonomialOrder order_;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

class UniverseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnboundSymbol : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Polynomial {
 public:
  Polynomial() = default;  // detached zero; only useful as a placeholder
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial monomial(RingPtr ring, Monomial m, const Rational& c = 1);
  // Combines like terms, drops zeros and sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  // Trusts that `terms` are already sorted, distinct and nonzero.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Rational& c) const;
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;
  // this - c * m * g, in one merge pass.
  Polynomial sub_mul_term(const Rational& c, const Monomial& m, const Polynomial& g) const;

  Polynomial monic() const;
  // Integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial primitive() const;
  Polynomial derivative(std::size_t var) const;

  Rational evaluate(const std::map<std::string, Rational>& point) const;
  Rational evaluate(std::span<const Rational> values) const;  // by universe index

  // Binds some symbols to values; the result is mapped into `target`, which
  // must contain every symbol left unbound.
  Polynomial substitute(const std::map<std::string, Rational>& bindings, RingPtr target) const;
  // Same polynomial over another ring, matching symbols by name.
  Polynomial in_ring(RingPtr target) const;

  bool uses(std::size_t var) const;
  std::vector<std::size_t> support() const;

  bool operator==(const Polynomial& o) const;

  std::string to_string() const;

 private:
  void require_same_universe(const Polynomial& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

std::string to_string(const Monomial& m, const SymbolUniverse& u);

// All monomials of total degree <= k in `vars` (universe indices), sorted
// descending by the ring's order.
std::vector<Monomial> monomials_up_to_degree(const PolyRing& ring,
                                             const std::vector<std::size_t>& vars, unsigned k);

}  // namespace alginv
