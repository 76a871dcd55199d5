#include "doctest.h"

#include <fstream>

#include "alginv/numeric.hpp"
#include "alginv/spec_io.hpp"
#include "support.hpp"

using namespace alginv;
using namespace alginv::testing;
using nlohmann::json;

namespace {

const std::filesystem::path corpus_dir = ALGINV_CORPUS_DIR;

const char* running_spec = R"(
name: running
variables: [x, y]
field: {x: y^2, y: x*y}
precondition: [x - y]
query:
  kind: post
  template: {complete: 2}
)";

RunOptions serial() {
  RunOptions o;
  o.exec = Exec::serial;
  return o;
}

}  // namespace

TEST_CASE("spec parsing") {
  auto s = parse_spec(running_spec);
  CHECK(s.name == "running");
  CHECK(s.variables == std::vector<std::string>{"x", "y"});
  CHECK(s.field.at("x") == "y^2");
  CHECK(s.kind == QueryKind::post);
  REQUIRE(s.templ);
  CHECK(s.templ->degree == 2u);
  auto sys = build_system(s);
  CHECK(sys.field.drift("y") == P(sys.ring, "x*y"));
  CHECK(sys.precondition.generators == Ps(sys.ring, {"x - y"}));
}

TEST_CASE("JSON and YAML specs are interchangeable") {
  auto s = parse_spec(running_spec);
  auto doc = spec_to_json(s);
  auto again = spec_from_json(doc);
  CHECK(spec_to_json(again) == doc);
  auto from_text = parse_spec(doc.dump());
  CHECK(spec_to_json(from_text) == doc);
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir)) {
    if (e.path().extension() != ".yaml") continue;
    auto spec = load_spec(e.path());
    CHECK(spec_to_json(parse_spec(spec_to_json(spec).dump())) == spec_to_json(spec));
  }
}

TEST_CASE("spec errors") {
  CHECK_THROWS_AS(parse_spec("name: a\nvariables: [x]\nfield: {x: x}\nquery: {kind: post, template: {complete: 1}}\nextra: 1"),
                  SpecError);
  CHECK_THROWS_AS(parse_spec("variables: [x]\nfield: {x: x}\nquery: {kind: sideways}"), SpecError);
  CHECK_THROWS(build_system(parse_spec("variables: [x]\nfield: {x: x + z}\nquery: {kind: pre, polynomials: [x]}")));
  CHECK_THROWS(build_system(parse_spec("variables: [x, y]\nfield: {x: y}\nquery: {kind: pre, polynomials: [x]}")));
  CHECK_THROWS(build_system(parse_spec("variables: [x]\nfield: {x: 2x}\nquery: {kind: pre, polynomials: [x]}")));
  auto bad = run(parse_spec("variables: [x]\nfield: {x: x^-1}\nquery: {kind: pre, polynomials: [x]}"));
  CHECK(bad.exit_code == exit_input_error);
  CHECK(bad.document.contains("error"));
}

TEST_CASE("running example report") {
  auto r = run(parse_spec(running_spec), serial());
  CHECK(r.exit_code == exit_holds);
  const auto& res = r.document["result"];
  CHECK(res["iterations"] == 0);
  CHECK(res["valuations"]["dimension"] == 3);
  CHECK(res["invariant_ideal"]["groebner_basis"] == json::array({"x - y"}));
  auto sys = build_system(parse_spec(running_spec));
  std::vector<Polynomial> comps;
  for (const auto& c : res["result_template"]["components"]) comps.push_back(P(sys.ring, c.get<std::string>()));
  for (const auto& w : Ps(sys.ring, {"y^2 - x^2", "x*y - x^2", "y - x"})) CHECK(in_span(w, comps));
  CHECK(r.text.find("x - y") != std::string::npos);
}

TEST_CASE("pre report") {
  auto r = run(load_spec(corpus_dir / "pre_example.yaml"), serial());
  CHECK(r.exit_code == exit_holds);
  CHECK(r.document["result"]["iterations"] == 1);
  auto sys = build_system(load_spec(corpus_dir / "pre_example.yaml"));
  std::vector<Polynomial> basis;
  for (const auto& g : r.document["result"]["ideal"]["groebner_basis"]) basis.push_back(P(sys.ring, g.get<std::string>()));
  CHECK(same_ideal(basis, Ps(sys.ring, {"x^2 - x*y", "-x^2*y + 2*x*y^2 - y^3"})));
}

TEST_CASE("empty precondition with a zero template") {
  auto r = run(parse_spec("variables: [x, y]\nfield: {x: y^2, y: x*y}\nquery: {kind: post, template: '0'}"),
               serial());
  CHECK(r.exit_code == exit_holds);
  CHECK(r.document["result"]["valuations"]["dimension"] == 0);
  CHECK(r.document["result"]["result_template"]["expression"] == "0");
  CHECK(r.document["result"]["invariant_ideal"]["groebner_basis"].empty());
}

TEST_CASE("verdict exit codes") {
  CHECK(run(load_spec(corpus_dir / "running_example_check.yaml"), serial()).exit_code == exit_holds);
  auto fails = run(load_spec(corpus_dir / "running_example_check_fails.yaml"), serial());
  CHECK(fails.exit_code == exit_fails);
  CHECK(fails.document.contains("witness"));
  auto inconclusive = run(parse_spec(R"(
variables: [x, y]
field: {x: 0, y: 0}
precondition: [x^2 + y^2 - 1]
query: {kind: check, polynomials: [x]}
)"),
                          serial());
  CHECK(inconclusive.exit_code == exit_inconclusive);
  auto capped = parse_spec(running_spec);
  capped.options.max_iterations = 0;
  CHECK(run(capped, serial()).exit_code == exit_resource_limit);
  auto not_exact = run(parse_spec(R"(
variables: [x, y]
field: {x: y^2, y: x*y}
precondition: [x^2 - y]
query: {kind: weakest-pre, template: {complete: 1}}
)"),
                       serial());
  CHECK(not_exact.exit_code == exit_input_error);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir)) {
    if (e.path().extension() != ".yaml") continue;
    auto spec = load_spec(e.path());
    RunOptions par;
    par.exec = Exec::parallel;
    auto a = stable_content(run(spec, serial()).document);
    auto b = stable_content(run(spec, serial()).document);
    auto c = stable_content(run(spec, par).document);
    CHECK_MESSAGE(a == b, e.path().filename().string());
    CHECK_MESSAGE(a == c, e.path().filename().string());
  }
}

TEST_CASE("stored corpus reports match fresh runs") {
  std::size_t compared = 0;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir)) {
    if (e.path().extension() != ".yaml") continue;
    std::ifstream in(corpus_dir / "expected" / (e.path().stem().string() + ".json"));
    REQUIRE_MESSAGE(in, e.path().filename().string());
    json want = json::parse(in);
    CHECK_MESSAGE(stable_content(run(load_spec(e.path())).document) == want, e.path().filename().string());
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("numeric check of the ghost invariant") {
  auto sys = build_system(load_spec(corpus_dir / "ghost_example.yaml"));
  const auto& u = sys.ring->universe();
  std::vector<Rational> x(u.size());
  x[u.index_of("x")] = 2;
  x[u.index_of("y")] = 1;
  x[u.index_of("x0")] = 2;
  x[u.index_of("y0")] = 1;
  auto p = P(sys.ring, "x0^2 - y0^2 - x^2 + y^2");
  auto report = numeric_verify(sys.field, {p}, {x});
  CHECK(report.passed());
  CHECK(report.samples_used == 1);
  // the trajectory escapes to infinity near t = 0.76 and is followed until
  // the integration loses accuracy
  REQUIRE(report.followed_until.size() == 1);
  CHECK(report.followed_until[0] > 0.5);
  CHECK(report.checks[0].worst_ratio <= 1.0);
  CHECK(numeric_verify(sys.field, {Polynomial(sys.ring)}, {x}).passed());
}

TEST_CASE("numeric check catches a wrong invariant") {
  auto sys = build_system(load_spec(corpus_dir / "running_example.yaml"));
  auto report = numeric_verify(sys.field, {P(sys.ring, "x - 2*y")}, {{1, 1}});
  CHECK_FALSE(report.passed());
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].time <= 1.0);
  CHECK(numeric_verify(sys.field, {P(sys.ring, "x - y")}, {{1, 1}}).passed());
}

TEST_CASE("sampled points satisfy the precondition exactly") {
  for (const char* f : {"collision_avoidance.yaml", "airplane.yaml", "ghost_example.yaml", "running_example.yaml"}) {
    auto sys = build_system(load_spec(corpus_dir / f));
    auto points = sample_points(sys.precondition.generators, sys.ring, {});
    CHECK_MESSAGE(points.size() >= 5, f);
    for (const auto& x : points)
      for (const auto& g : sys.precondition.generators) CHECK(g.evaluate(x) == 0);
  }
  auto r = ring_of({"x", "y"});
  auto circle = sample_points(Ps(r, {"x^2 + y^2 - 1"}), r, {});
  CHECK_FALSE(circle.empty());
  for (const auto& x : circle) CHECK(P(r, "x^2 + y^2 - 1").evaluate(x) == 0);
}
