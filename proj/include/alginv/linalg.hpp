#pragma once

// Exact linear algebra over Q for parameter-valuation spaces.

#include <map>
#include <string>
#include <vector>

#include "alginv/rational.hpp"

namespace alginv {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, rows of equal length

// Homogeneous linear expression sum(c_k * a_k); the constant term is always 0.
class LinearForm {
 public:
  LinearForm() = default;
  static LinearForm unit(std::size_t param) {
    LinearForm f;
    f.coeffs_[param] = 1;
    return f;
  }

  const std::map<std::size_t, Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coefficient(std::size_t param) const;
  void add(std::size_t param, const Rational& c);
  Rational evaluate(const Vector& v) const;
  Vector dense(std::size_t n) const;

  bool operator==(const LinearForm&) const = default;

  // "a1 + a2 - 3*a4" given parameter names.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::map<std::size_t, Rational> coeffs_;
};

struct EchelonForm {
  Matrix rows;                      // reduced row echelon, pivots normalised to 1
  std::vector<std::size_t> pivots;  // pivot column of each row
};

// Reduced row echelon form, computed fraction-free on integer rows and
// normalised to rationals at the end. Zero rows are dropped.
EchelonForm row_echelon(Matrix m, std::size_t ncols);

// Basis of {v : m v = 0}, one vector per free column.
Matrix nullspace(const Matrix& m, std::size_t ncols);

// Subspace of Q^n kept as the canonical reduced-row-echelon basis of its
// rows; two subspaces are equal iff their bases are identical.
class Subspace {
 public:
  static Subspace full(std::size_t n);
  static Subspace zero(std::size_t n);
  static Subspace span(const Matrix& vectors, std::size_t n);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_full() const { return dim() == n_; }

  bool contains(const Vector& v) const;
  // Coordinates of v (assumed to be a member) in the echelon basis.
  Vector coordinates(const Vector& v) const;
  // Linear forms whose common zero set is this subspace (row echelon).
  std::vector<LinearForm> annihilator() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

 private:
  Subspace(std::size_t n, EchelonForm e)
      : n_(n), basis_(std::move(e.rows)), pivots_(std::move(e.pivots)) {}
  std::size_t n_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace solve_homogeneous(const std::vector<LinearForm>& constraints, std::size_t n);

// V intersected with the common zero set of `constraints`.
Subspace refine(const Subspace& v, const std::vector<LinearForm>& constraints);

inline bool subspace_equal(const Subspace& a, const Subspace& b) { return a == b; }
inline bool member(const Vector& v, const Subspace& s) { return s.contains(v); }

}  // namespace alginv
