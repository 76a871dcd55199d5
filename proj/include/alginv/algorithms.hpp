#pragma once

// Strongest-postcondition (POST) and weakest-precondition (PRE) chains for
// polynomial vector fields, with the safety and invariance checks built on
// them.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alginv/dynamics.hpp"
#include "alginv/groebner.hpp"
#include "alginv/linalg.hpp"

namespace alginv {

// How the ideal of the precondition variety is approximated.
//   generators     I = <Q>; sound, exact when Q is affine-linear or a point
//   singleton      Q = {x_i - c_i} for every state variable; exact
//   user_supplied  Q is taken as a Gröbner basis of some I inside Id(psi);
//                  unchecked
enum class RadicalMode { generators, singleton, user_supplied };

std::string to_string(RadicalMode mode);
RadicalMode parse_radical_mode(std::string_view text);

struct Precondition {
  std::vector<Polynomial> generators;
  RadicalMode mode = RadicalMode::generators;
  // Only meaningful for user_supplied: the caller asserts I = Id(psi).
  bool declared_exact = false;
};

// True when the ideal used for the precondition is its full vanishing ideal.
bool precondition_is_exact(const Precondition& pre);

class ModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IterationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChainOptions {
  unsigned max_iterations = 64;
  GbOptions gb;
  Exec exec = kernels::default_exec();
  bool verify = true;  // re-check the result invariants after each run
};

struct ChainStep {
  unsigned index = 0;
  std::size_t dim_v = 0;
  std::size_t ideal_generators = 0;
  bool v_stable = false;              // V_index == V_{index-1}
  std::optional<bool> ideal_stable;   // set only when the ideal was compared
};

struct PostResult {
  Subspace valuations = Subspace::zero(0);
  ResultTemplate result;
  Ideal invariant_ideal;
  Ideal precondition_ideal;
  unsigned iterations = 0;
  bool mode_exact = false;
  std::vector<ChainStep> trace;
};

PostResult post(const Precondition& pre, const Template& templ, const VectorField& field,
                const ChainOptions& options = {});

struct PreResult {
  Ideal ideal;
  unsigned iterations = 0;
  std::vector<Polynomial> derivative_closure;
  std::vector<ChainStep> trace;
};

PreResult pre(const std::vector<Polynomial>& postcondition, const VectorField& field,
              const ChainOptions& options = {});

enum class Verdict { holds, fails, inconclusive };
std::string to_string(Verdict v);

struct SafetyWitness {
  std::vector<Rational> point;  // indexed like the field's universe
  std::size_t polynomial = 0;   // index into the postcondition list
  unsigned derivative_order = 0;
  Rational value;               // nonzero value of that derivative at point
};

struct SafetyResult {
  Verdict verdict = Verdict::inconclusive;
  PostResult post;
  std::optional<SafetyWitness> witness;
};

SafetyResult check_safety(const Precondition& pre, const std::vector<Polynomial>& postcondition,
                          const VectorField& field, const ChainOptions& options = {});

// Lie derivatives of the reduced basis all lie in the ideal.
bool check_invariant_ideal(const Ideal& ideal, const VectorField& field);

struct WeakestPrecondition {
  ResultTemplate result;  // defines phi
  Ideal ideal;            // Var(ideal) is the weakest precondition of phi
  PostResult post;
};

// Requires an exact precondition; throws ModeError otherwise.
WeakestPrecondition weakest_precondition_via_post(const Precondition& pre, const Template& templ,
                                                  const VectorField& field,
                                                  const ChainOptions& options = {});

}  // namespace alginv
