#include "alginv/linalg.hpp"

#include <stdexcept>

#include "alginv/kernels.hpp"

namespace alginv {

// ---------------------------------------------------------------- LinearForm

Rational LinearForm::coefficient(std::size_t param) const {
  auto it = coeffs_.find(param);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinearForm::add(std::size_t param, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(param, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Rational LinearForm::evaluate(const Vector& v) const {
  Rational s = 0;
  for (const auto& [k, c] : coeffs_) {
    if (k >= v.size()) throw std::out_of_range("valuation is shorter than the linear form");
    s += c * v[k];
  }
  return s;
}

Vector LinearForm::dense(std::size_t n) const {
  Vector out(n, 0);
  for (const auto& [k, c] : coeffs_) {
    if (k >= n) throw std::out_of_range("linear form refers to a parameter beyond the ambient dimension");
    out[k] = c;
  }
  return out;
}

std::string LinearForm::to_string(const std::vector<std::string>& names) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    const std::string name = k < names.size() ? names[k] : "a" + std::to_string(k + 1);
    out += mag == 1 ? name : alginv::to_string(mag) + "*" + name;
  }
  return out;
}

// ---------------------------------------------------------------- echelon

namespace {

std::vector<kernels::IntRow> to_integer_rows(const Matrix& m, std::size_t ncols) {
  std::vector<kernels::IntRow> rows;
  rows.reserve(m.size());
  for (const auto& r : m) {
    if (r.size() != ncols) throw std::invalid_argument("matrix row has the wrong length");
    Integer den = 1;
    for (const auto& v : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    kernels::IntRow ir(ncols);
    bool nonzero = false;
    for (std::size_t k = 0; k < ncols; ++k) {
      Rational scaled = r[k] * den;
      ir[k] = scaled.get_num();
      nonzero = nonzero || ir[k] != 0;
    }
    if (nonzero) {
      kernels::content_free(ir);
      rows.push_back(std::move(ir));
    }
  }
  return rows;
}

}  // namespace

EchelonForm row_echelon(Matrix m, std::size_t ncols) {
  auto rows = to_integer_rows(m, ncols);
  const Exec exec = rows.size() > 32 ? kernels::default_exec() : Exec::serial;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    // Smallest nonzero entry as pivot keeps the integers short.
    std::size_t best = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
    }
    if (best == rows.size()) continue;
    std::swap(rows[rank], rows[best]);
    kernels::eliminate_column(rows, rank, col, exec);
    pivots.push_back(col);
    ++rank;
  }
  EchelonForm out;
  out.pivots = pivots;
  out.rows.reserve(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    Vector row(ncols);
    const Integer& p = rows[r][pivots[r]];
    for (std::size_t k = 0; k < ncols; ++k) {
      row[k] = Rational(rows[r][k], p);
      row[k].canonicalize();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

Matrix nullspace(const Matrix& m, std::size_t ncols) {
  EchelonForm e = row_echelon(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(ncols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::full(std::size_t n) {
  EchelonForm e;
  for (std::size_t k = 0; k < n; ++k) {
    Vector row(n, 0);
    row[k] = 1;
    e.rows.push_back(std::move(row));
    e.pivots.push_back(k);
  }
  return Subspace(n, std::move(e));
}

Subspace Subspace::zero(std::size_t n) { return Subspace(n, EchelonForm{}); }

Subspace Subspace::span(const Matrix& vectors, std::size_t n) {
  return Subspace(n, row_echelon(vectors, n));
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != n_) throw std::invalid_argument("vector has the wrong dimension");
  Vector residual = v;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const Rational c = residual[pivots_[r]];
    if (c == 0) continue;
    for (std::size_t k = 0; k < n_; ++k) residual[k] -= c * basis_[r][k];
  }
  for (const auto& x : residual)
    if (x != 0) return false;
  return true;
}

Vector Subspace::coordinates(const Vector& v) const {
  Vector out;
  out.reserve(basis_.size());
  for (auto p : pivots_) out.push_back(v.at(p));
  return out;
}

std::vector<LinearForm> Subspace::annihilator() const {
  std::vector<LinearForm> out;
  for (const auto& row : row_echelon(nullspace(basis_, n_), n_).rows) {
    LinearForm f;
    for (std::size_t k = 0; k < n_; ++k) f.add(k, row[k]);
    out.push_back(std::move(f));
  }
  return out;
}

Subspace solve_homogeneous(const std::vector<LinearForm>& constraints, std::size_t n) {
  Matrix m;
  m.reserve(constraints.size());
  for (const auto& c : constraints) m.push_back(c.dense(n));
  return Subspace::span(nullspace(m, n), n);
}

Subspace refine(const Subspace& v, const std::vector<LinearForm>& constraints) {
  const std::size_t d = v.dim();
  const std::size_t n = v.ambient_dim();
  if (d == 0 || constraints.empty()) return v;
  // Express each constraint on V's basis, solve there, map back.
  Matrix restricted;
  restricted.reserve(constraints.size());
  for (const auto& c : constraints) {
    Vector row(d, 0);
    for (std::size_t k = 0; k < d; ++k) row[k] = c.evaluate(v.basis()[k]);
    restricted.push_back(std::move(row));
  }
  Matrix coords = nullspace(restricted, d);
  Matrix vectors;
  vectors.reserve(coords.size());
  for (const auto& w : coords) {
    Vector x(n, 0);
    for (std::size_t k = 0; k < d; ++k) {
      if (w[k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) x[j] += w[k] * v.basis()[k][j];
    }
    vectors.push_back(std::move(x));
  }
  return Subspace::span(vectors, n);
}

}  // namespace alginv
