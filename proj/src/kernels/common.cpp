#include <cmath>
#include <unordered_map>

#include "alginv/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alginv::kernels {

Exec default_exec() {
#ifdef _OPENMP
  return Exec::parallel;
#else
  return Exec::serial;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
  for (const auto& t : p.terms()) {
    CTerm ct;
    ct.coeff = t.coeff.get_d();
    for (std::size_t v = 0; v < t.mono.nvars(); ++v)
      if (t.mono[v] != 0) ct.factors.push_back({static_cast<std::uint32_t>(v), t.mono[v]});
    terms_.push_back(std::move(ct));
  }
}

namespace {
double factor_value(const double* x, std::uint32_t var, std::uint32_t exp) {
  double b = x[var];
  double r = 1.0;
  for (std::uint32_t k = 0; k < exp; ++k) r *= b;
  return r;
}
}  // namespace

double CompiledPolynomial::evaluate(const double* x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (const auto& f : t.factors) v *= factor_value(x, f.var, f.exp);
    sum += v;
  }
  return sum;
}

double CompiledPolynomial::magnitude(const double* x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = std::fabs(t.coeff);
    for (const auto& f : t.factors) v *= std::fabs(factor_value(x, f.var, f.exp));
    sum += v;
  }
  return sum;
}

Polynomial lie_derivative_of(const Polynomial& p, std::span<const Polynomial> drifts) {
  const RingPtr& ring = p.ring();
  if (drifts.size() != ring->nvars())
    throw std::invalid_argument("vector field arity does not match the polynomial ring");
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      const auto e = t.mono[i];
      if (e == 0 || drifts[i].is_zero()) continue;
      Monomial reduced = t.mono;
      reduced.set(i, e - 1);
      Rational c = t.coeff * e;
      for (const auto& ft : drifts[i].terms()) acc[reduced * ft.mono] += c * ft.coeff;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  return Polynomial::from_terms(ring, std::move(terms));
}

void rk4_step(std::span<const CompiledPolynomial> drifts, std::vector<double>& x, double h,
              std::vector<double>& scratch) {
  const std::size_t n = x.size();
  scratch.resize(5 * n);
  double* k1 = scratch.data();
  double* k2 = k1 + n;
  double* k3 = k2 + n;
  double* k4 = k3 + n;
  double* y = k4 + n;
  for (std::size_t i = 0; i < n; ++i) k1[i] = drifts[i].evaluate(x.data());
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + 0.5 * h * k1[i];
  for (std::size_t i = 0; i < n; ++i) k2[i] = drifts[i].evaluate(y);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + 0.5 * h * k2[i];
  for (std::size_t i = 0; i < n; ++i) k3[i] = drifts[i].evaluate(y);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + h * k3[i];
  for (std::size_t i = 0; i < n; ++i) k4[i] = drifts[i].evaluate(y);
  for (std::size_t i = 0; i < n; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

Trajectory follow_rk4(std::span<const CompiledPolynomial> drifts, const std::vector<double>& x0, double step,
                      std::size_t steps, double accuracy) {
  Trajectory traj;
  traj.reserve(steps + 1);
  traj.push_back(x0);
  std::vector<double> x = x0, full, half, scratch;
  for (std::size_t k = 0; k < steps; ++k) {
    full = x;
    rk4_step(drifts, full, step, scratch);
    double err = 0.0;
    if (accuracy > 0) {
      half = x;
      rk4_step(drifts, half, step / 2, scratch);
      rk4_step(drifts, half, step / 2, scratch);
      for (std::size_t i = 0; i < x.size(); ++i)
        err = std::max(err, std::abs(full[i] - half[i]) / (1.0 + std::abs(half[i])));
    }
    bool finite = true;
    for (double v : full) finite = finite && std::isfinite(v);
    if (!finite || !(err <= accuracy || accuracy <= 0)) break;
    x = full;
    traj.push_back(x);
  }
  return traj;
}

void content_free(IntRow& row) {
  Integer g = 0;
  for (const auto& v : row) {
    if (v != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& v : row)
      if (v != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

void eliminate_column(std::vector<IntRow>& rows, std::size_t pivot_row, std::size_t col, Exec exec) {
  if (exec == Exec::parallel) {
    omp::eliminate_column(rows, pivot_row, col);
  } else {
    serial::eliminate_column(rows, pivot_row, col);
  }
}

std::vector<Polynomial> lie_derivatives(std::span<const Polynomial> polys,
                                        std::span<const Polynomial> drifts, Exec exec) {
  return exec == Exec::parallel ? omp::lie_derivatives(polys, drifts)
                                : serial::lie_derivatives(polys, drifts);
}

std::vector<Polynomial> normal_forms(std::span<const Polynomial> polys,
                                     std::span<const Polynomial> basis, Exec exec) {
  return exec == Exec::parallel ? omp::normal_forms(polys, basis)
                                : serial::normal_forms(polys, basis);
}

std::vector<Trajectory> integrate_rk4(std::span<const CompiledPolynomial> drifts,
                                      std::span<const std::vector<double>> initial, double step,
                                      std::size_t steps, double accuracy, Exec exec) {
  return exec == Exec::parallel ? omp::integrate_rk4(drifts, initial, step, steps, accuracy)
                                : serial::integrate_rk4(drifts, initial, step, steps, accuracy);
}

}  // namespace alginv::kernels
