#include "doctest.h"

#include "support.hpp"

using namespace alginv;
using namespace alginv::testing;

namespace {

LinearForm form(std::initializer_list<std::pair<std::size_t, int>> cs) {
  LinearForm f;
  for (auto [k, c] : cs) f.add(k, c);
  return f;
}

// a4 + a5 + a6, a2 + a3, a1 over 0-based indices
std::vector<LinearForm> r0_constraints() { return {form({{3, 1}, {4, 1}, {5, 1}}), form({{1, 1}, {2, 1}}), form({{0, 1}})}; }

Vector vec(std::initializer_list<int> xs) { return Vector(xs.begin(), xs.end()); }

}  // namespace

TEST_CASE("nullspace of the degree-2 remainder constraints") {
  auto V0 = solve_homogeneous(r0_constraints(), 6);
  CHECK(V0.dim() == 3);
  for (const auto& b : V0.basis()) {
    CHECK(b[0] == 0);
    CHECK(b[1] == -b[2]);
    CHECK(b[3] == -b[4] - b[5]);
  }
  CHECK(V0.contains(vec({0, 0, 0, -1, 0, 1})));
  CHECK_FALSE(V0.contains(vec({1, 0, 0, 0, 0, 0})));
  CHECK(subspace_equal(V0, solve_homogeneous(r0_constraints(), 6)));
}

TEST_CASE("small nullspaces") {
  CHECK(solve_homogeneous({}, 4) == Subspace::full(4));
  auto s = solve_homogeneous({form({{0, 1}, {1, 1}}), form({{2, 1}})}, 3);
  CHECK(s == Subspace::span({vec({1, -1, 0})}, 3));
}

TEST_CASE("refinement") {
  auto V0 = solve_homogeneous(r0_constraints(), 6);
  CHECK(refine(V0, {}) == V0);
  CHECK(refine(V0, {LinearForm()}) == V0);
  auto h = refine(Subspace::full(3), {form({{0, 1}})});
  CHECK(h.dim() == 2);
  CHECK(h.contains(vec({0, 5, -2})));
  CHECK_FALSE(h.contains(vec({1, 0, 0})));
  // forms from a complement of V0 kill it
  std::vector<LinearForm> complement;
  for (const auto& b : V0.basis()) {
    LinearForm f;
    for (std::size_t k = 0; k < b.size(); ++k) f.add(k, b[k]);
    complement.push_back(f);
  }
  auto inner = refine(V0, complement);
  CHECK(inner.dim() == 0);
}

TEST_CASE("annihilator describes the subspace") {
  auto V0 = solve_homogeneous(r0_constraints(), 6);
  CHECK(solve_homogeneous(V0.annihilator(), 6) == V0);
}

TEST_CASE("echelon basis is canonical under row operations") {
  Random rnd(31);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 6));
    Matrix rows;
    for (int k = rnd.integer(1, 4); k > 0; --k) rows.push_back(rnd.valuation(n));
    auto a = Subspace::span(rows, n);
    Matrix mixed = rows;
    for (int op = 0; op < 6; ++op) {
      auto s = static_cast<std::size_t>(rnd.integer(0, static_cast<int>(rows.size()) - 1));
      auto t = static_cast<std::size_t>(rnd.integer(0, static_cast<int>(rows.size()) - 1));
      Rational c = rnd.coefficient();
      if (s == t) {
        for (auto& x : mixed[s]) x *= c;
      } else {
        for (std::size_t k = 0; k < n; ++k) mixed[s][k] += c * mixed[t][k];
      }
    }
    std::shuffle(mixed.begin(), mixed.end(), rnd.engine());
    CHECK(Subspace::span(mixed, n) == a);
  }
}

TEST_CASE("dimension is n minus rank, refine is monotone and idempotent") {
  Random rnd(32);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 7));
    std::vector<LinearForm> c;
    Matrix dense;
    for (int k = rnd.integer(0, 4); k > 0; --k) {
      LinearForm f;
      for (std::size_t j = 0; j < n; ++j)
        if (rnd.coin()) f.add(j, rnd.integer(-2, 2));
      c.push_back(f);
      dense.push_back(f.dense(n));
    }
    auto s = solve_homogeneous(c, n);
    CHECK(s.dim() == n - row_echelon(dense, n).rows.size());
    for (const auto& b : s.basis())
      for (const auto& f : c) CHECK(f.evaluate(b) == 0);
    auto start = Subspace::span({rnd.valuation(n), rnd.valuation(n), rnd.valuation(n)}, n);
    auto once = refine(start, c);
    CHECK(refine(once, c) == once);
    for (const auto& b : once.basis()) CHECK(start.contains(b));
  }
}

TEST_CASE("coordinates in the echelon basis") {
  auto V0 = solve_homogeneous(r0_constraints(), 6);
  Vector v = vec({0, 2, -2, -3, 1, 2});
  REQUIRE(V0.contains(v));
  auto c = V0.coordinates(v);
  Vector back(6, 0);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j < 6; ++j) back[j] += c[k] * V0.basis()[k][j];
  CHECK(back == v);
}
