// OpenMP variants. Every item is computed independently into its own output
// slot, so results match the serial kernels exactly.

#include "alginv/groebner.hpp"
#include "alginv/kernels.hpp"

namespace alginv::kernels::omp {

void eliminate_column(std::vector<IntRow>& rows, std::size_t pivot_row, std::size_t col) {
  const IntRow pivot = rows[pivot_row];
  const Integer& p = pivot[col];
  const auto nrows = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t r = 0; r < nrows; ++r) {
    if (static_cast<std::size_t>(r) == pivot_row || rows[r][col] == 0) continue;
    IntRow& row = rows[r];
    const Integer a = row[col];
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = p * row[k] - a * pivot[k];
    content_free(row);
  }
}

std::vector<Polynomial> lie_derivatives(std::span<const Polynomial> polys,
                                        std::span<const Polynomial> drifts) {
  std::vector<Polynomial> out(polys.size());
  const auto n = static_cast<std::ptrdiff_t>(polys.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = lie_derivative_of(polys[i], drifts);
  return out;
}

std::vector<Polynomial> normal_forms(std::span<const Polynomial> polys,
                                     std::span<const Polynomial> basis) {
  std::vector<Polynomial> out(polys.size());
  const auto n = static_cast<std::ptrdiff_t>(polys.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = normal_form(polys[i], basis);
  return out;
}

std::vector<Trajectory> integrate_rk4(std::span<const CompiledPolynomial> drifts,
                                      std::span<const std::vector<double>> initial, double step,
                                      std::size_t steps, double accuracy) {
  std::vector<Trajectory> out(initial.size());
  const auto n = static_cast<std::ptrdiff_t>(initial.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t s = 0; s < n; ++s) out[s] = follow_rk4(drifts, initial[s], step, steps, accuracy);
  return out;
}

}  // namespace alginv::kernels::omp
