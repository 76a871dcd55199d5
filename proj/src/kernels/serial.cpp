// Reference implementations: plain loops, kept as the oracle for the
// OpenMP variants.

#include "alginv/groebner.hpp"
#include "alginv/kernels.hpp"

namespace alginv::kernels::serial {

void eliminate_column(std::vector<IntRow>& rows, std::size_t pivot_row, std::size_t col) {
  const IntRow pivot = rows[pivot_row];
  const Integer& p = pivot[col];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == pivot_row || rows[r][col] == 0) continue;
    IntRow& row = rows[r];
    const Integer a = row[col];
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = p * row[k] - a * pivot[k];
    content_free(row);
  }
}

std::vector<Polynomial> lie_derivatives(std::span<const Polynomial> polys,
                                        std::span<const Polynomial> drifts) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(lie_derivative_of(p, drifts));
  return out;
}

std::vector<Polynomial> normal_forms(std::span<const Polynomial> polys,
                                     std::span<const Polynomial> basis) {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(normal_form(p, basis));
  return out;
}

std::vector<Trajectory> integrate_rk4(std::span<const CompiledPolynomial> drifts,
                                      std::span<const std::vector<double>> initial, double step,
                                      std::size_t steps, double accuracy) {
  std::vector<Trajectory> out;
  out.reserve(initial.size());
  for (const auto& x0 : initial) out.push_back(follow_rk4(drifts, x0, step, steps, accuracy));
  return out;
}

}  // namespace alginv::kernels::serial
