#include "alginv/algorithms.hpp"

#include <algorithm>

#include "alginv/numeric.hpp"

namespace alginv {

std::string to_string(RadicalMode mode) {
  switch (mode) {
    case RadicalMode::generators: return "generators";
    case RadicalMode::singleton: return "singleton";
    case RadicalMode::user_supplied: return "user-supplied";
  }
  return "?";
}

RadicalMode parse_radical_mode(std::string_view text) {
  if (text == "generators") return RadicalMode::generators;
  if (text == "singleton") return RadicalMode::singleton;
  if (text == "user-supplied" || text == "user_supplied" || text == "user")
    return RadicalMode::user_supplied;
  throw std::invalid_argument("unknown radical mode '" + std::string(text) + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

bool is_affine(const std::vector<Polynomial>& gens) {
  return std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.degree() <= 1; });
}

// {x_i - c_i} naming every state variable once.
bool is_point_pattern(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return false;
  const std::size_t n = gens.front().ring()->nvars();
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (const auto& g : gens) {
    if (g.is_zero() || g.degree() != 1) return false;
    auto support = g.support();
    if (support.size() != 1 || seen[support[0]]) return false;
    seen[support[0]] = true;
    ++count;
  }
  return count == n;
}

void check_ring(const Polynomial& p, const RingPtr& ring, const char* what) {
  if (!p.ring() || !p.ring()->same_universe(*ring))
    throw UniverseMismatch(std::string(what) + " is not over the vector field's variables");
}

std::vector<Polynomial> in_ring(const std::vector<Polynomial>& ps, const RingPtr& ring,
                                const char* what) {
  std::vector<Polynomial> out;
  out.reserve(ps.size());
  for (const auto& p : ps) {
    check_ring(p, ring, what);
    out.push_back(p.in_ring(ring));
  }
  return out;
}

// Basis of the ideal used for the precondition, according to its mode.
Ideal precondition_ideal(const Precondition& pre, const RingPtr& ring, const GbOptions& gb) {
  auto gens = in_ring(pre.generators, ring, "precondition generator");
  std::erase_if(gens, [](const Polynomial& p) { return p.is_zero(); });
  switch (pre.mode) {
    case RadicalMode::singleton:
      if (!is_point_pattern(gens))
        throw ModeError("singleton mode needs one generator x - c for every state variable");
      return Ideal::from_reduced_basis(ring, reduce_basis(gens), gb);
    case RadicalMode::user_supplied:
      return Ideal::from_reduced_basis(ring, reduce_basis(gens), gb);
    case RadicalMode::generators:
      break;
  }
  return Ideal(ring, std::move(gens), gb);
}

std::vector<Polynomial> combine(const Matrix& coords, const std::vector<Polynomial>& polys,
                                const RingPtr& ring) {
  std::vector<Polynomial> out;
  out.reserve(coords.size());
  for (const auto& row : coords) {
    std::vector<Term> terms;
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (row[l] == 0) continue;
      for (const auto& t : polys[l].terms()) terms.push_back({t.mono, t.coeff * row[l]});
    }
    out.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return out;
}

// Constraints on the coordinates of the current basis, one row per monomial.
Matrix coordinate_constraints(const std::vector<Polynomial>& remainders) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  Matrix rows;
  const std::size_t d = remainders.size();
  for (std::size_t k = 0; k < d; ++k) {
    for (const auto& t : remainders[k].terms()) {
      auto [it, inserted] = row_of.try_emplace(t.mono, rows.size());
      if (inserted) rows.emplace_back(d, Rational(0));
      rows[it->second][k] += t.coeff;
    }
  }
  return rows;
}

void require(bool cond, const char* what) {
  if (!cond) throw std::logic_error(std::string("internal invariant violated: ") + what);
}

}  // namespace

bool precondition_is_exact(const Precondition& pre) {
  switch (pre.mode) {
    case RadicalMode::singleton: return true;
    case RadicalMode::user_supplied: return pre.declared_exact;
    case RadicalMode::generators: {
      std::vector<Polynomial> gens;
      for (const auto& g : pre.generators)
        if (!g.is_zero()) gens.push_back(g);
      // Ideals of affine subspaces (and of the empty set) are real radical.
      return is_affine(gens) || is_point_pattern(gens);
    }
  }
  return false;
}

PostResult post(const Precondition& precond, const Template& templ, const VectorField& field,
                const ChainOptions& options) {
  const RingPtr& ring = field.ring();
  if (!templ.ring() || !(*templ.ring() == *field.ring()))
    throw UniverseMismatch("template and vector field use different rings");

  PostResult out;
  out.precondition_ideal = precondition_ideal(precond, ring, options.gb);
  out.mode_exact = precondition_is_exact(precond);
  const std::vector<Polynomial>& G = out.precondition_ideal.groebner_basis();

  const std::size_t n = templ.nparams();
  // basis: echelon basis of the current V; chain[j][k] = pi^(j)[basis_k].
  Subspace current = Subspace::full(n);
  std::vector<std::vector<Polynomial>> chain;
  std::vector<Polynomial> candidate = templ.components();
  std::optional<Ideal> ideal;  // J for the current chain, built lazily

  auto ideal_generators = [&] {
    std::vector<Polynomial> gens;
    for (const auto& level : chain)
      for (const auto& p : level) gens.push_back(p);
    return gens;
  };

  for (unsigned i = 0;; ++i) {
    if (i > options.max_iterations)
      throw IterationCapExceeded("chain did not stabilise within " +
                                 std::to_string(options.max_iterations) + " iterations");
    const std::size_t d = current.dim();
    auto remainders = kernels::normal_forms(candidate, G, options.exec);
    Matrix coords = nullspace(coordinate_constraints(remainders), d);

    ChainStep step;
    step.index = i;
    if (coords.size() == d) {
      step.v_stable = i > 0;
      if (i > 0) {
        // V_i == V_{i-1}: J_i == J_{i-1} iff the new instances already lie in J_{i-1}.
        if (!ideal) ideal = Ideal(ring, ideal_generators(), options.gb);
        bool stable = std::all_of(candidate.begin(), candidate.end(),
                                  [&](const Polynomial& p) { return ideal->contains(p); });
        step.ideal_stable = stable;
        step.dim_v = d;
        step.ideal_generators = d * chain.size();
        if (stable) {
          out.trace.push_back(step);
          out.iterations = i - 1;
          out.invariant_ideal = *ideal;
          break;
        }
        ideal = ideal->extended(candidate);
      }
      chain.push_back(std::move(candidate));
    } else {
      // Rewrite the chain over the refined basis. The old basis is in echelon
      // form, so a member's coordinates are its entries at the old pivots.
      Matrix vectors;
      vectors.reserve(coords.size());
      for (const auto& w : coords) {
        Vector x(n, 0);
        for (std::size_t k = 0; k < d; ++k) {
          if (w[k] == 0) continue;
          for (std::size_t j = 0; j < n; ++j) x[j] += w[k] * current.basis()[k][j];
        }
        vectors.push_back(std::move(x));
      }
      Subspace refined = Subspace::span(vectors, n);
      require(refined.dim() < d, "refinement must shrink the valuation space");
      Matrix change;
      change.reserve(refined.dim());
      for (const auto& row : refined.basis()) change.push_back(current.coordinates(row));
      for (auto& level : chain) level = combine(change, level, ring);
      chain.push_back(combine(change, candidate, ring));
      current = std::move(refined);
      ideal.reset();
    }
    if (step.dim_v == 0) {
      step.dim_v = current.dim();
      step.ideal_generators = current.dim() * chain.size();
    }
    out.trace.push_back(step);
    candidate = kernels::lie_derivatives(chain.back(), field.drifts(), options.exec);
  }

  for (std::size_t k = 1; k < out.trace.size(); ++k)
    require(out.trace[k].dim_v <= out.trace[k - 1].dim_v, "valuation chain must be descending");

  out.valuations = current;
  out.result = result_template(templ, current);
  if (options.verify) {
    for (const auto& p : out.result.result.components())
      require(out.invariant_ideal.contains(p), "result template instances must lie in J");
    require(check_invariant_ideal(out.invariant_ideal, field), "J must be an invariant ideal");
  }
  return out;
}

PreResult pre(const std::vector<Polynomial>& postcondition, const VectorField& field,
              const ChainOptions& options) {
  const RingPtr& ring = field.ring();
  if (postcondition.empty()) throw std::invalid_argument("pre needs at least one polynomial");
  auto level = in_ring(postcondition, ring, "postcondition polynomial");
  std::erase_if(level, [](const Polynomial& p) { return p.is_zero(); });

  PreResult out;
  out.derivative_closure = level;
  Ideal ideal(ring, level, options.gb);
  for (unsigned j = 0;; ++j) {
    if (j > options.max_iterations)
      throw IterationCapExceeded("ideal chain did not stabilise within " +
                                 std::to_string(options.max_iterations) + " iterations");
    auto next = kernels::lie_derivatives(level, field.drifts(), options.exec);
    std::erase_if(next, [](const Polynomial& p) { return p.is_zero(); });
    const bool stable =
        std::all_of(next.begin(), next.end(), [&](const Polynomial& p) { return ideal.contains(p); });
    ChainStep step;
    step.index = j;
    step.ideal_generators = out.derivative_closure.size();
    step.ideal_stable = stable;
    out.trace.push_back(step);
    if (stable) {
      out.iterations = j;
      break;
    }
    ideal = ideal.extended(next);
    out.derivative_closure.insert(out.derivative_closure.end(), next.begin(), next.end());
    level = std::move(next);
  }
  out.ideal = ideal;
  if (options.verify) {
    for (const auto& p : out.derivative_closure)
      require(out.ideal.contains(lie_derivative(p, field)),
              "pre ideal must be Lie-closed on its generators");
  }
  return out;
}

SafetyResult check_safety(const Precondition& precond, const std::vector<Polynomial>& postcondition,
                          const VectorField& field, const ChainOptions& options) {
  const RingPtr& ring = field.ring();
  auto qs = in_ring(postcondition, ring, "postcondition polynomial");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < qs.size(); ++k) names.push_back("a" + std::to_string(k + 1));
  Template templ(ring, names, qs);

  SafetyResult out;
  out.post = post(precond, templ, field, options);
  if (out.post.valuations.is_full()) {
    out.verdict = Verdict::holds;
    return out;
  }
  if (!out.post.mode_exact) {
    out.verdict = Verdict::inconclusive;
    return out;
  }
  out.verdict = Verdict::fails;

  // Best-effort witness: a rational point of psi where some derivative of a
  // postcondition polynomial is nonzero.
  SamplerOptions sopts;
  sopts.count = 8;
  auto points = sample_points(out.post.precondition_ideal.groebner_basis(), ring, sopts);
  for (std::size_t k = 0; k < qs.size() && !out.witness; ++k) {
    Vector e(qs.size(), 0);
    e[k] = 1;
    if (out.post.valuations.contains(e)) continue;
    Polynomial q = qs[k];
    for (unsigned j = 0; j <= out.post.iterations + 1 && !out.witness; ++j) {
      for (const auto& x : points) {
        Rational v = q.evaluate(x);
        if (v != 0) {
          out.witness = SafetyWitness{x, k, j, v};
          break;
        }
      }
      q = lie_derivative(q, field);
    }
  }
  return out;
}

bool check_invariant_ideal(const Ideal& ideal, const VectorField& field) {
  const auto& gb = ideal.groebner_basis();
  auto derivs = kernels::lie_derivatives(gb, field.drifts(), kernels::default_exec());
  return std::all_of(derivs.begin(), derivs.end(), [&](const Polynomial& p) { return ideal.contains(p); });
}

WeakestPrecondition weakest_precondition_via_post(const Precondition& precond, const Template& templ,
                                                  const VectorField& field,
                                                  const ChainOptions& options) {
  if (!precondition_is_exact(precond))
    throw ModeError("weakest precondition via post needs an exact precondition ideal "
                    "(singleton, affine generators, or declared user-supplied)");
  WeakestPrecondition out;
  out.post = post(precond, templ, field, options);
  out.result = out.post.result;
  out.ideal = out.post.invariant_ideal;
  return out;
}

}  // namespace alginv
