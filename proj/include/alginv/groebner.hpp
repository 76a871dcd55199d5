#pragma once

// Multivariate division, Buchberger's algorithm and ideal predicates.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "alginv/poly.hpp"

namespace alginv {

// Raised when a Gröbner computation exceeds its configured budget. Never
// accompanied by a partial answer.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GbOptions {
  std::size_t pair_budget = 1'000'000;  // S-pairs reduced before giving up
  unsigned degree_cap = 256;             // largest S-pair lcm degree allowed
  // Picks pairs in a seeded random order instead of smallest lcm first.
  std::optional<std::uint64_t> shuffle_pairs;
};

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;  // quotients[i] multiplies divisors[i]
};

// Division of `p` by `divisors`, trying divisors in list order at each step.
// p == sum(quotients[i] * divisors[i]) + remainder, and no remainder term is
// divisible by a divisor's leading monomial.
DivisionResult divide(const Polynomial& p, std::span<const Polynomial> divisors);

// Remainder only; same result as divide(p, divisors).remainder.
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

// A Gröbner basis of <gens> using the product and chain criteria and the
// normal selection strategy. Zero generators are dropped.
std::vector<Polynomial> buchberger(std::vector<Polynomial> gens, const GbOptions& options = {});

// Monic, auto-reduced, sorted by leading monomial (descending). Requires that
// `basis` be a Gröbner basis.
std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis);

inline std::vector<Polynomial> reduced_groebner_basis(std::vector<Polynomial> gens,
                                                      const GbOptions& options = {}) {
  return reduce_basis(buchberger(std::move(gens), options));
}

// The subset of a Gröbner basis free of parameter symbols. Throws
// std::invalid_argument unless the ring's order eliminates the parameters.
std::vector<Polynomial> eliminate_parameters(const std::vector<Polynomial>& basis);

// An ideal given by generators, with its reduced Gröbner basis computed on
// first use and shared by copies.
class Ideal {
 public:
  Ideal() : cache_(std::make_shared<Cache>()) {}
  Ideal(RingPtr ring, std::vector<Polynomial> generators, GbOptions options = {});
  // Wraps a basis the caller vouches is a reduced Gröbner basis.
  static Ideal from_reduced_basis(RingPtr ring, std::vector<Polynomial> basis,
                                  GbOptions options = {});

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Polynomial>& groebner_basis() const;
  const GbOptions& options() const { return options_; }

  bool contains(const Polynomial& p) const;
  bool is_zero() const { return groebner_basis().empty(); }
  bool is_unit() const;

  // The ideal generated by this one plus `extra`, reusing the cached basis.
  Ideal extended(const std::vector<Polynomial>& extra) const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> basis;
  };
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  GbOptions options_;
  std::shared_ptr<Cache> cache_;
};

bool member(const Polynomial& p, const Ideal& ideal);
// True when `outer` contains every generator of `inner`.
bool ideal_contains(const Ideal& outer, const Ideal& inner);
// Reduced-basis identity; the rings must agree.
bool ideal_equal(const Ideal& a, const Ideal& b);

}  // namespace alginv
