#include "alginv/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "alginv/linalg.hpp"

namespace alginv {

namespace {

class PointBuilder {
 public:
  PointBuilder(const std::vector<Polynomial>& gens, const RingPtr& ring, std::mt19937_64& rng)
      : gens_(gens), ring_(ring), rng_(rng), value_(ring->nvars()) {}

  std::optional<std::vector<Rational>> build() {
    for (std::size_t round = 0; round <= 4 * ring_->nvars() + 4; ++round) {
      auto residual = residuals();
      if (!residual) return std::nullopt;
      if (residual->empty()) return finish();
      if (!solve_linear(*residual) && !open_up(*residual)) return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  Rational random_value() {
    std::uniform_int_distribution<int> d(-3, 3);
    Rational r(d(rng_), 2);
    r.canonicalize();
    return r;
  }

  std::map<std::string, Rational> bindings() const {
    std::map<std::string, Rational> b;
    for (std::size_t i = 0; i < value_.size(); ++i)
      if (value_[i]) b[ring_->universe().symbol(i).name] = *value_[i];
    return b;
  }

  // Generators with the current assignment plugged in; nullopt on a
  // contradiction.
  std::optional<std::vector<Polynomial>> residuals() const {
    auto b = bindings();
    std::vector<Polynomial> out;
    for (const auto& g : gens_) {
      Polynomial r = g.substitute(b, ring_);
      if (r.is_zero()) continue;
      if (r.is_constant()) return std::nullopt;
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Rational> finish() {
    std::vector<Rational> point(value_.size());
    for (std::size_t i = 0; i < value_.size(); ++i) point[i] = value_[i] ? *value_[i] : random_value();
    for (const auto& g : gens_)
      if (g.evaluate(point) != 0) return {};
    return point;
  }

  // Assigns variables from the affine residuals; false if there were none.
  bool solve_linear(const std::vector<Polynomial>& residual) {
    const std::size_t n = ring_->nvars();
    Matrix rows;
    for (const auto& r : residual) {
      if (r.degree() != 1) continue;
      Vector row(n + 1, 0);
      for (const auto& t : r.terms()) {
        if (t.mono.is_one()) {
          row[n] = t.coeff;
        } else {
          for (std::size_t v = 0; v < n; ++v)
            if (t.mono[v] != 0) row[v] = t.coeff;
        }
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) return false;
    auto e = row_echelon(rows, n + 1);
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
      if (e.pivots[k] == n) return false;  // 0 = 1
      const auto& row = e.rows[k];
      std::optional<std::size_t> free_var;
      for (std::size_t v = e.pivots[k] + 1; v < n; ++v)
        if (row[v] != 0) free_var = v;
      if (free_var) {
        value_[*free_var] = random_value();
        return true;  // re-eliminate with the new value
      }
      value_[e.pivots[k]] = -row[n];
    }
    return true;
  }

  // No affine residual left: fix all but one variable of some generator so
  // that it becomes solvable next round.
  bool open_up(const std::vector<Polynomial>& residual) {
    for (const auto& r : residual) {
      for (auto v : r.support()) {
        // r = c*v + h(others) with c constant
        bool linear = true;
        for (const auto& t : r.terms())
          if (t.mono[v] > 1 || (t.mono[v] == 1 && t.mono.degree() != 1)) linear = false;
        if (!linear) continue;
        for (auto w : r.support())
          if (w != v) value_[w] = random_value();
        return true;
      }
    }
    for (const auto& r : residual) {
      auto support = r.support();
      for (auto v : support) {
        for (auto w : support)
          if (w != v) value_[w] = random_value();
        Polynomial u = r.substitute(bindings(), ring_);
        if (u.degree() == 2 && solve_quadratic(u, v)) return true;
        for (auto w : support)
          if (w != v) value_[w].reset();
      }
    }
    return false;
  }

  bool solve_quadratic(const Polynomial& u, std::size_t v) {
    Rational a, b, c;
    for (const auto& t : u.terms()) {
      if (t.mono[v] == 2) a = t.coeff;
      else if (t.mono[v] == 1) b = t.coeff;
      else c = t.coeff;
    }
    Rational disc = b * b - 4 * a * c;
    if (disc < 0) return false;
    disc.canonicalize();
    Integer num = disc.get_num(), den = disc.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    mpz_sqrt(num.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), den.get_mpz_t());
    Rational root(num, den);
    root.canonicalize();
    value_[v] = (-b + root) / (2 * a);
    return true;
  }

  const std::vector<Polynomial>& gens_;
  RingPtr ring_;
  std::mt19937_64& rng_;
  std::vector<std::optional<Rational>> value_;
};

std::vector<double> to_double(const std::vector<Rational>& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].get_d();
  return out;
}

std::vector<kernels::CompiledPolynomial> compile(std::span<const Polynomial> ps) {
  std::vector<kernels::CompiledPolynomial> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.emplace_back(p);
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> sample_points(const std::vector<Polynomial>& generators,
                                                 const RingPtr& ring, const SamplerOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(g.in_ring(ring));
  std::vector<std::vector<Rational>> out;
  for (std::size_t k = 0; k < options.count; ++k) {
    for (unsigned attempt = 0; attempt < options.attempts_per_point; ++attempt) {
      PointBuilder builder(gens, ring, rng);
      auto point = builder.build();
      if (point && !point->empty() && std::find(out.begin(), out.end(), *point) == out.end()) {
        out.push_back(std::move(*point));
        break;
      }
    }
  }
  return out;
}

NumericReport numeric_verify(const VectorField& field, const std::vector<Polynomial>& invariants,
                             const std::vector<std::vector<Rational>>& points,
                             const NumericOptions& options) {
  if (options.step <= 0 || options.horizon < 0)
    throw std::invalid_argument("numeric check needs a positive step and nonnegative horizon");
  const auto drifts = compile(field.drifts());
  const std::size_t steps = static_cast<std::size_t>(std::llround(options.horizon / options.step));
  std::vector<std::vector<double>> initial;
  for (const auto& x : points) initial.push_back(to_double(x));
  const double accuracy = options.step_accuracy > 0
                              ? options.step_accuracy
                              : options.tolerance / (10.0 * static_cast<double>(std::max<std::size_t>(steps, 1)));
  auto trajectories = kernels::integrate_rk4(drifts, initial, options.step, steps, accuracy, options.exec);

  NumericReport report;
  report.samples_used = points.size();
  for (const auto& traj : trajectories) report.followed_until.push_back((traj.size() - 1) * options.step);
  for (const auto& p : invariants) {
    Polynomial q = p.in_ring(field.ring());
    kernels::CompiledPolynomial cp(q);
    NumericCheck check;
    check.polynomial = q.to_string();
    for (std::size_t s = 0; s < trajectories.size(); ++s) {
      const auto& traj = trajectories[s];
      double scale = 0.0;
      for (const auto& x : traj) scale = std::max(scale, cp.magnitude(x.data()));
      const double bound = options.tolerance * (1.0 + scale);
      std::optional<NumericFailure> failure;
      for (std::size_t k = 0; k < traj.size(); ++k) {
        double v = cp.evaluate(traj[k].data());
        double ratio = std::isfinite(v) ? std::abs(v) / bound : INFINITY;
        check.worst_ratio = std::max(check.worst_ratio, ratio);
        if (ratio > 1.0 && !failure)
          failure = NumericFailure{check.polynomial, initial[s], k * options.step, v, scale};
      }
      if (failure) {
        check.passed = false;
        report.failures.push_back(std::move(*failure));
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

double numeric_time_derivative(const VectorField& field, const Polynomial& p,
                               const std::vector<double>& x0, double h) {
  const auto drifts = compile(field.drifts());
  kernels::CompiledPolynomial cp(p.in_ring(field.ring()));
  std::vector<double> scratch;
  auto forward = x0;
  auto backward = x0;
  kernels::rk4_step(drifts, forward, h, scratch);
  kernels::rk4_step(drifts, backward, -h, scratch);
  return (cp.evaluate(forward.data()) - cp.evaluate(backward.data())) / (2.0 * h);
}

}  // namespace alginv
