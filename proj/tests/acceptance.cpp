// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "alginv/spec_io.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace alginv;
using namespace alginv::testing;

namespace {

const std::filesystem::path corpus_dir = ALGINV_CORPUS_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

BuiltSystem load(const char* file) { return build_system(load_spec(corpus_dir / file)); }

Outcome running_example_post() {
  Outcome o;
  auto r = ring_of({"x", "y"});
  auto F = field_of(r, {"y^2", "x*y"});
  auto res = post({Ps(r, {"x - y"})}, complete(r, 2), F);
  // parameters a1..a6 multiply 1, x, y, x^2, x*y, y^2
  LinearForm c1, c2, c3;
  c1.add(0, 1);
  c2.add(1, 1);
  c2.add(2, 1);
  c3.add(3, 1);
  c3.add(4, 1);
  c3.add(5, 1);
  o.require(res.valuations == solve_homogeneous({c1, c2, c3}, 6), "V differs from v1 = 0, v2 = -v3, v4 = -v5 - v6");
  o.require(res.valuations.dim() == 3, "dim V != 3");
  auto want = Ps(r, {"y^2 - x^2", "x*y - x^2", "y - x"});
  const auto& got = res.result.result.components();
  for (const auto& w : want) o.require(in_span(w, got), w.to_string() + " not in the result span");
  for (const auto& g : got) o.require(in_span(g, want), g.to_string() + " outside the expected span");
  o.require(res.invariant_ideal.groebner_basis() == Ps(r, {"x - y"}), "GB of J is not {x - y}");
  o.require(res.iterations == 0 && res.trace.size() == 2 && res.trace[1].v_stable && res.trace[1].ideal_stable == true,
            "did not stop with V1 = V0 and J1 = J0");
  o.detail = o.ok ? "dim V = 3, J = <x - y>, m = 0" : o.detail;
  return o;
}

Outcome ghost_post() {
  Outcome o;
  auto sys = load("ghost_example.yaml");
  auto res = post(sys.precondition, *sys.templ, sys.field);
  auto J = res.invariant_ideal.groebner_basis();
  o.require(J.size() == 1 && J[0] == P(sys.ring, "x0^2 - y0^2 - x^2 + y^2").monic(), "J differs");
  auto triv = load("trivial_precondition.yaml");
  auto tres = post(triv.precondition, *triv.templ, triv.field);
  o.require(tres.result.result.is_zero() && tres.result.result.nparams() == 0, "trivial precondition gives a nonzero result");
  o.require(tres.valuations.dim() == 0, "trivial precondition keeps a nonzero V");
  if (o.ok) o.detail = "J = <" + J[0].to_string() + ">, trivial variant gives 0";
  return o;
}

Outcome pre_example() {
  Outcome o;
  auto r = ring_of({"x", "y"});
  auto F = field_of(r, {"y^2", "x*y"});
  auto res = pre(Ps(r, {"x^2 - x*y"}), F);
  o.require(res.iterations == 1, "m != 1");
  auto want = reduced_groebner_basis(Ps(r, {"x^2 - x*y", "-x^2*y + 2*x*y^2 - y^3"}));
  o.require(res.ideal.groebner_basis() == want, "reduced GB differs");
  o.require(member(P(r, "-x^3*y + 4*x^2*y^2 - 5*x*y^3 + 2*y^4"), res.ideal), "q2 not a member");
  if (o.ok) o.detail = "m = 1, GB " + join(res.ideal.groebner_basis());
  return o;
}

Outcome lie_table() {
  Outcome o;
  auto r = ring_of({"x", "y"});
  auto F = field_of(r, {"y^2", "x*y"});
  o.require(lie_derivative(P(r, "x - y"), F) == P(r, "y^2 - x*y"), "L(x - y)");
  o.require(lie_iterate(P(r, "x - y"), F, 2) == P(r, "2*x*y^2 - x^2*y - y^3"), "L2(x - y)");
  o.require(lie_derivative(P(r, "x^2 - x*y"), F) == P(r, "-x^2*y + 2*x*y^2 - y^3"), "L(x^2 - x*y)");
  if (o.ok) o.detail = "three derivatives match";
  return o;
}

Outcome safety() {
  Outcome o;
  auto r = ring_of({"x", "y"});
  auto F = field_of(r, {"y^2", "x*y"});
  Precondition line{Ps(r, {"x - y"})};
  auto good = check_safety(line, Ps(r, {"x^2 - x*y"}), F);
  auto bad = check_safety(line, Ps(r, {"x"}), F);
  o.require(good.verdict == Verdict::holds, "x^2 - x*y not proved");
  o.require(bad.verdict != Verdict::holds, "x proved");
  if (o.ok) o.detail = "holds / " + to_string(bad.verdict);
  return o;
}

Outcome collision() {
  Outcome o;
  auto sys = load("collision_avoidance.yaml");
  o.require(sys.field.dimension() == 18, "field is not 18-dimensional");
  o.require(sys.templ->nparams() == 190, "template does not have 190 parameters");
  auto res = post(sys.precondition, *sys.templ, sys.field);
  o.require(res.valuations.dim() == 10, "dim V = " + std::to_string(res.valuations.dim()));
  o.require(res.iterations == 3, "m = " + std::to_string(res.iterations));
  auto appendix = Ps(sys.ring, {
      "x10^2*d20 + x20^2*d20 - 2*x10*d20*x1 + d20*x1^2 - 2*x20*d20*x2 + d20*x2^2 - 2*x10*x20*d1 + 2*x20*x1*d1"
      " + 2*x10*x2*d1 - 2*x1*x2*d1 + x10^2*d2 - x20^2*d2 - 2*x10*x1*d2 + x1^2*d2 + 2*x20*x2*d2 - x2^2*d2",
      "y10^2*e20 + y20^2*e20 - 2*y10*e20*y1 + e20*y1^2 - 2*y20*e20*y2 + e20*y2^2 - 2*y10*y20*e1 + 2*y20*y1*e1"
      " + 2*y10*y2*e1 - 2*y1*y2*e1 + y10^2*e2 - y20^2*e2 - 2*y10*y1*e2 + y1^2*e2 + 2*y20*y2*e2 - y2^2*e2",
      "w1*x10 - w1*x1 - d20 + d2",
      "w1*x20 - w1*x2 + d10 - d1",
      "w2*y10 - w2*y1 - e20 + e2",
      "w2*y20 - w2*y2 + e10 - e1",
      "x10*d10 + x20*d20 - d10*x1 - d20*x2 - x10*d1 + x1*d1 - x20*d2 + x2*d2",
      "x20*d10 - x10*d20 + d20*x1 - d10*x2 + x20*d1 - x2*d1 - x10*d2 + x1*d2",
      "d10^2 + d20^2 - d1^2 - d2^2",
      "y10*e10 + y20*e20 - e10*y1 - e20*y2 - y10*e1 + y1*e1 - y20*e2 + y2*e2",
      "y20*e10 - y10*e20 + e20*y1 - e10*y2 + y20*e1 - y2*e1 - y10*e2 + y1*e2",
      "e10^2 + e20^2 - e1^2 - e2^2",
  });
  const auto& J = res.invariant_ideal.groebner_basis();
  o.require(J.size() == 12, "reduced GB of J has " + std::to_string(J.size()) + " elements");
  o.require(reduced_groebner_basis(appendix) == J, "J differs from the ideal of the 12 listed polynomials");
  for (const auto& p : appendix) o.require(res.invariant_ideal.contains(p), p.to_string() + " not in J");
  if (o.ok) o.detail = "dim V = 10, m = 3, J = ideal of the 12 listed polynomials";
  return o;
}

Outcome airplane() {
  Outcome o;
  auto sys = load("airplane.yaml");
  o.require(sys.field.dimension() == 17, "field is not 17-dimensional");
  o.require(sys.templ->nparams() == 207, "template has " + std::to_string(sys.templ->nparams()) + " parameters");
  auto w = weakest_precondition_via_post(sys.precondition, *sys.templ, sys.field);
  const auto& comps = w.result.result.components();
  o.require(comps.size() == 4, "result template has " + std::to_string(comps.size()) + " parameters");
  auto p = Ps(sys.ring, {
      "c^2 + s^2 - 1",
      "-1/2*q^2 + theta*M + 1/2*q0^2",
      "u*q*c + w*q*s - Xm*s + Zm*c - x*M + M*x0 - u0*q0 - Zm",
      "w*q*c - u*q*s - theta*g - Xm*c - Zm*s - z*M + M*z0 - w0*q0 + Xm",
  });
  o.require(in_span(p[0], comps), "p1 not an instance of the result template");
  o.require(in_span(p[1], comps), "p2 not an instance of the result template");
  o.require(ideal_equal(w.ideal, Ideal(sys.ring, p)), "J != <p1, p2, p3, p4>");
  o.require(w.post.iterations == 8, "m = " + std::to_string(w.post.iterations));
  if (o.ok) o.detail = "4 parameters, J = <p1..p4>, m = 8";
  return o;
}

Outcome properties() {
  Outcome o;
  std::vector<SuiteResult> suites = {
      division_contract(500, 1),          s_polynomials_reduce(100, 2),  membership_agrees_with_oracle(100, 3),
      reduced_basis_canonicity(50, 4),    lie_laws(500, 5),              template_commutation(100, 6),
      chain_monotonicity(40, 7),          corpus_numeric_soundness(corpus_dir),
  };
  std::string counts;
  for (const auto& s : suites) {
    o.require(s.passed(), s.name + ": " + std::to_string(s.failures) + " of " + std::to_string(s.instances) +
                              " failed, first " + s.first_failure);
    counts += (counts.empty() ? "" : ", ") + std::to_string(s.instances);
  }
  if (o.ok) o.detail = "instances " + counts;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "running-example post", 1.0, running_example_post},
      {2, "ghost-variable post", 5.0, ghost_post},
      {3, "pre of x^2 - x*y", 1.0, pre_example},
      {4, "Lie derivative table", 0.1, lie_table},
      {5, "safety check", 1.0, safety},
      {6, "collision avoidance", 600.0, collision},
      {7, "airplane vertical motion", 600.0, airplane},
      {8, "property suites", 0.0, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.budget_s > 0 && secs > c.budget_s) {
      o.ok = false;
      o.detail = "over the time budget";
    }
    failed += !o.ok;
    std::printf("criterion %d %-26s %s  %8.3f s  %s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
