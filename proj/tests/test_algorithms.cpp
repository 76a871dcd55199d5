#include "doctest.h"

#include "properties.hpp"
#include "support.hpp"

using namespace alginv;
using namespace alginv::testing;

namespace {

struct Running {
  RingPtr ring = ring_of({"x", "y"});
  VectorField field = field_of(ring, {"y^2", "x*y"});
};

struct Ghost {
  RingPtr ring = ring_of({"x", "y", "x0", "y0"});
  VectorField field = field_of(ring, {"y^2", "x*y", "0", "0"});
  Precondition pre{Ps(ring, {"x - x0", "y - y0"})};
};

std::vector<Polynomial> gb(const Ideal& I) { return I.groebner_basis(); }

}  // namespace

TEST_CASE("post from the line x = y") {
  Running s;
  Precondition pre{Ps(s.ring, {"x - y"})};
  auto t = complete(s.ring, 2);
  auto res = post(pre, t, s.field);
  CHECK(res.mode_exact);
  CHECK(res.valuations.dim() == 3);
  for (const auto& b : res.valuations.basis()) {
    // parameters: 1, x, y, x^2, x*y, y^2
    CHECK(b[0] == 0);
    CHECK(b[1] == -b[2]);
    CHECK(b[3] == -b[4] - b[5]);
  }
  CHECK(gb(res.invariant_ideal) == Ps(s.ring, {"x - y"}));
  CHECK(res.iterations == 0);
  REQUIRE(res.trace.size() == 2);
  CHECK(res.trace[1].v_stable);
  CHECK(res.trace[1].ideal_stable == true);
  auto want = Ps(s.ring, {"y^2 - x^2", "x*y - x^2", "y - x"});
  CHECK(res.result.result.nparams() == 3);
  for (const auto& w : want) CHECK(in_span(w, res.result.result.components()));
}

TEST_CASE("post with ghost initial values") {
  Ghost g;
  auto res = post(g.pre, complete(g.ring, 2), g.field);
  auto J = gb(res.invariant_ideal);
  REQUIRE(J.size() == 1);
  CHECK(J[0] == P(g.ring, "x0^2 - y0^2 - x^2 + y^2").monic());
}

TEST_CASE("post from the whole plane") {
  Running s;
  auto res = post(Precondition{}, complete(s.ring, 2), s.field);
  CHECK(res.valuations.dim() == 0);
  CHECK(res.result.result.nparams() == 0);
  CHECK(res.result.result.is_zero());
  CHECK(res.invariant_ideal.is_zero());
}

TEST_CASE("increasing template degree settles the ghost ideal") {
  Ghost g;
  auto J1 = post(g.pre, complete(g.ring, 1), g.field).invariant_ideal;
  auto J2 = post(g.pre, complete(g.ring, 2), g.field).invariant_ideal;
  auto J3 = post(g.pre, complete(g.ring, 3), g.field).invariant_ideal;
  CHECK(ideal_contains(J2, J1));
  CHECK(ideal_equal(J2, J3));
  CHECK_FALSE(J2.is_zero());
}

TEST_CASE("pre of x^2 - x*y") {
  Running s;
  auto res = pre(Ps(s.ring, {"x^2 - x*y"}), s.field);
  CHECK(res.iterations == 1);
  CHECK(ideal_equal(res.ideal, Ideal(s.ring, Ps(s.ring, {"x^2 - x*y", "-x^2*y + 2*x*y^2 - y^3"}))));
  CHECK(res.ideal.contains(P(s.ring, "-x^3*y + 4*x^2*y^2 - 5*x*y^3 + 2*y^4")));
  for (const auto& p : res.derivative_closure) CHECK(res.ideal.contains(lie_derivative(p, s.field)));
}

TEST_CASE("pre of trivial postconditions") {
  Running s;
  auto zero = pre(Ps(s.ring, {"0"}), s.field);
  CHECK(zero.iterations == 0);
  CHECK(zero.ideal.is_zero());
  auto one = pre(Ps(s.ring, {"1"}), s.field);
  CHECK(one.iterations == 0);
  CHECK(one.ideal.is_unit());
}

TEST_CASE("safety checks") {
  Running s;
  Precondition line{Ps(s.ring, {"x - y"})};
  CHECK(check_safety(line, Ps(s.ring, {"x^2 - x*y"}), s.field).verdict == Verdict::holds);
  // the reasoning behind holds: both reduce to zero modulo x - y
  CHECK(normal_form(P(s.ring, "x^2 - x*y"), Ps(s.ring, {"x - y"})).is_zero());
  CHECK(normal_form(P(s.ring, "-y*(x - y)^2"), Ps(s.ring, {"x - y"})).is_zero());

  auto bad = check_safety(line, Ps(s.ring, {"x"}), s.field);
  CHECK(bad.verdict == Verdict::fails);
  REQUIRE(bad.witness);
  CHECK(bad.witness->point[0] == bad.witness->point[1]);
  CHECK(bad.witness->value != 0);

  VectorField still = field_of(s.ring, {"0", "0"});
  Precondition circle{Ps(s.ring, {"x^2 + y^2 - 1"})};
  CHECK(check_safety(circle, Ps(s.ring, {"2*x^2 + 2*y^2 - 2"}), still).verdict == Verdict::holds);
  CHECK(check_safety(circle, Ps(s.ring, {"x"}), still).verdict == Verdict::inconclusive);
}

TEST_CASE("invariant ideal checks") {
  Running s;
  CHECK(check_invariant_ideal(Ideal(s.ring, Ps(s.ring, {"x - y"})), s.field));
  CHECK(P(s.ring, "y^2 - x*y") == P(s.ring, "-y") * P(s.ring, "x - y"));
  CHECK(check_invariant_ideal(Ideal(s.ring, Ps(s.ring, {"1"})), s.field));
  VectorField shift = field_of(s.ring, {"1", "0"});
  CHECK_FALSE(check_invariant_ideal(Ideal(s.ring, Ps(s.ring, {"x"})), shift));
}

TEST_CASE("weakest precondition through post") {
  Running s;
  Precondition point{Ps(s.ring, {"x - 1", "y - 1"}), RadicalMode::singleton};
  auto t = template_of(s.ring, "a1*(x - y)", {"a1"});
  auto w = weakest_precondition_via_post(point, t, s.field);
  CHECK(w.result.result.nparams() == 1);
  CHECK(ideal_equal(w.ideal, pre(Ps(s.ring, {"x - y"}), s.field).ideal));

  auto zero_space = weakest_precondition_via_post(point, template_of(s.ring, "a1*x", {"a1"}), s.field);
  CHECK(zero_space.result.result.nparams() == 0);
  CHECK(zero_space.ideal.is_zero());

  Precondition curve{Ps(s.ring, {"x^2 - y"})};
  CHECK_THROWS_AS(weakest_precondition_via_post(curve, t, s.field), ModeError);
}

TEST_CASE("exactness of precondition ideals") {
  Running s;
  CHECK(precondition_is_exact({Ps(s.ring, {"x - y"})}));
  CHECK(precondition_is_exact({Ps(s.ring, {"x - 2", "y + 1/2"})}));
  CHECK(precondition_is_exact({}));
  CHECK_FALSE(precondition_is_exact({Ps(s.ring, {"x^2 - y^2"})}));
  CHECK_FALSE(precondition_is_exact({Ps(s.ring, {"x^2"}), RadicalMode::user_supplied}));
  CHECK(precondition_is_exact({Ps(s.ring, {"x^2 + y^2 - 1"}), RadicalMode::user_supplied, true}));
}

TEST_CASE("iteration cap") {
  Running s;
  ChainOptions o;
  o.max_iterations = 0;
  CHECK_THROWS_AS(post({Ps(s.ring, {"x - y"})}, complete(s.ring, 2), s.field, o), IterationCapExceeded);
}

TEST_CASE("serial and parallel kernels give the same chains") {
  Ghost g;
  ChainOptions a, b;
  a.exec = Exec::serial;
  b.exec = Exec::parallel;
  auto ra = post(g.pre, complete(g.ring, 2), g.field, a);
  auto rb = post(g.pre, complete(g.ring, 2), g.field, b);
  CHECK(ra.valuations == rb.valuations);
  CHECK(gb(ra.invariant_ideal) == gb(rb.invariant_ideal));
  CHECK(ra.result.result.components() == rb.result.result.components());
}

TEST_CASE("valuation chains never grow") {
  auto r = chain_monotonicity(40, 51);
  INFO(r.first_failure);
  CHECK(r.passed());
}
