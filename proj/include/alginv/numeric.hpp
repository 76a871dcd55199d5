#pragma once

// Numeric falsification harness: exact rational sample points on a
// precondition variety, and RK4 trajectories along which claimed invariants
// must stay near zero.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alginv/dynamics.hpp"
#include "alginv/poly.hpp"

namespace alginv {

struct SamplerOptions {
  std::size_t count = 5;
  std::uint64_t seed = 20170314;
  unsigned attempts_per_point = 16;
};

// Rational points (indexed by universe position) where every generator
// vanishes exactly. Affine-linear generators are solved by elimination;
// others by fixing all but one variable. Best effort: may return fewer
// points than requested.
std::vector<std::vector<Rational>> sample_points(const std::vector<Polynomial>& generators,
                                                 const RingPtr& ring,
                                                 const SamplerOptions& options = {});

struct NumericOptions {
  double horizon = 1.0;
  double step = 1.0 / 256.0;
  double tolerance = 1e-6;
  // Largest step-doubling error estimate accepted before a trajectory is
  // cut short; 0 picks tolerance / (10 * number of steps).
  double step_accuracy = 0.0;
  Exec exec = kernels::default_exec();
};

struct NumericFailure {
  std::string polynomial;
  std::vector<double> point;
  double time = 0.0;
  double value = 0.0;
  double scale = 0.0;
};

struct NumericCheck {
  std::string polynomial;
  bool passed = true;
  double worst_ratio = 0.0;  // max |p| / (tolerance * (1 + scale)) seen
};

struct NumericReport {
  std::size_t samples_used = 0;
  std::vector<NumericCheck> checks;
  std::vector<NumericFailure> failures;
  std::vector<double> followed_until;  // per sample; below the horizon when cut short
  bool passed() const { return failures.empty(); }
};

// Integrates from each point (stopping early where RK4 loses accuracy, e.g.
// near a finite escape time) and requires |p(x(t))| <= tolerance * (1 + S)
// for every polynomial, where S is the largest term magnitude of p seen on
// that trajectory.
NumericReport numeric_verify(const VectorField& field, const std::vector<Polynomial>& invariants,
                             const std::vector<std::vector<Rational>>& points,
                             const NumericOptions& options = {});

// Central finite-difference estimate of d/dt p(x(t)) at t = 0 using RK4
// steps of size h in both directions.
double numeric_time_derivative(const VectorField& field, const Polynomial& p,
                               const std::vector<double>& x0, double h);

}  // namespace alginv
