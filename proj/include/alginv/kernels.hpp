#pragma once

// Data-parallel kernels. Each kernel has a serial reference implementation
// (kernels::serial) and an OpenMP implementation (kernels::omp) that must
// produce identical results; the unqualified entry points dispatch on Exec.

#include <span>
#include <vector>

#include "alginv/poly.hpp"

namespace alginv {

enum class Exec { serial, parallel };

namespace kernels {

Exec default_exec();
int max_threads();

using IntRow = std::vector<Integer>;

// Double-precision evaluation form of a polynomial.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);
  double evaluate(const double* x) const;
  // Sum of absolute term values at x; the natural cancellation scale.
  double magnitude(const double* x) const;

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  struct CTerm {
    double coeff;
    std::vector<Factor> factors;
  };
  std::vector<CTerm> terms_;
};

// States x(t_k) for t_k = k * step, k = 0..steps.
using Trajectory = std::vector<std::vector<double>>;

namespace serial {
void eliminate_column(std::vector<IntRow>& rows, std::size_t pivot_row, std::size_t col);
std::vector<Polynomial> lie_derivatives(std::span<const Polynomial> polys,
                                        std::span<const Polynomial> drifts);
std::vector<Polynomial> normal_forms(std::span<const Polynomial> polys,
                                     std::span<const Polynomial> basis);
std::vector<Trajectory> integrate_rk4(std::span<const CompiledPolynomial> drifts,
                                      std::span<const std::vector<double>> initial, double step,
                                      std::size_t steps, double accuracy);
}  // namespace serial

namespace omp {
void eliminate_column(std::vector<IntRow>& rows, std::size_t pivot_row, std::size_t col);
std::vector<Polynomial> lie_derivatives(std::span<const Polynomial> polys,
                                        std::span<const Polynomial> drifts);
std::vector<Polynomial> normal_forms(std::span<const Polynomial> polys,
                                     std::span<const Polynomial> basis);
std::vector<Trajectory> integrate_rk4(std::span<const CompiledPolynomial> drifts,
                                      std::span<const std::vector<double>> initial, double step,
                                      std::size_t steps, double accuracy);
}  // namespace omp

// Fraction-free elimination of column `col` from every row but `pivot_row`:
// row <- p * row - row[col] * pivot, followed by removal of the row content.
void eliminate_column(std::vector<IntRow>& rows, std::size_t pivot_row, std::size_t col, Exec exec);

// Lie derivative of each polynomial along `drifts` (drifts[i] is the
// derivative of universe symbol i).
std::vector<Polynomial> lie_derivatives(std::span<const Polynomial> polys,
                                        std::span<const Polynomial> drifts, Exec exec);

// Remainder of each polynomial by `basis`.
std::vector<Polynomial> normal_forms(std::span<const Polynomial> polys,
                                     std::span<const Polynomial> basis, Exec exec);

// Fixed-step classical Runge-Kutta from each initial state. With accuracy > 0
// a trajectory ends before the first step whose step-doubling error
// estimate, relative to 1 + |x_i|, exceeds `accuracy` (finite escape times
// make such steps meaningless); it also ends at non-finite states.
std::vector<Trajectory> integrate_rk4(std::span<const CompiledPolynomial> drifts,
                                      std::span<const std::vector<double>> initial, double step,
                                      std::size_t steps, double accuracy, Exec exec);

// Single-item primitives shared by both implementations.
Polynomial lie_derivative_of(const Polynomial& p, std::span<const Polynomial> drifts);
void rk4_step(std::span<const CompiledPolynomial> drifts, std::vector<double>& x, double h,
              std::vector<double>& scratch);
Trajectory follow_rk4(std::span<const CompiledPolynomial> drifts, const std::vector<double>& x0, double step,
                      std::size_t steps, double accuracy);
void content_free(IntRow& row);

}  // namespace kernels
}  // namespace alginv
