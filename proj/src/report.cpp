#include <chrono>
#include <cstdio>
#include <sstream>

#include "alginv/parser.hpp"
#include "alginv/spec_io.hpp"

namespace alginv {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json strings(std::span<const Polynomial> ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

json trace_json(const std::vector<ChainStep>& trace, bool with_dim) {
  json out = json::array();
  for (const auto& s : trace) {
    json step = {{"step", s.index}, {"ideal_generators", s.ideal_generators}};
    if (with_dim) {
      step["dim_v"] = s.dim_v;
      step["v_stable"] = s.v_stable;
    }
    if (s.ideal_stable) step["ideal_stable"] = *s.ideal_stable;
    out.push_back(step);
  }
  return out;
}

json valuation_json(const Vector& v, const std::vector<std::string>& names) {
  json out = json::object();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) out[names[k]] = to_string(v[k]);
  return out;
}

json post_json(const PostResult& r, const Template& templ) {
  json out;
  out["mode_exact"] = r.mode_exact;
  out["iterations"] = r.iterations;
  out["template_parameters"] = templ.nparams();
  out["trace"] = trace_json(r.trace, true);
  json basis = json::array();
  for (const auto& row : r.valuations.basis()) basis.push_back(valuation_json(row, templ.parameters()));
  out["valuations"] = {{"dimension", r.valuations.dim()}, {"basis", basis}};
  const Template& res = r.result.result;
  json behind = json::array();
  for (const auto& row : r.result.basis) behind.push_back(valuation_json(row, templ.parameters()));
  out["result_template"] = {{"parameters", res.parameters()},
                            {"components", strings(res.components())},
                            {"expression", res.is_zero() && res.nparams() == 0 ? "0" : res.to_string()},
                            {"valuations", behind}};
  out["invariant_ideal"] = {{"groebner_basis", strings(r.invariant_ideal.groebner_basis())}};
  out["precondition_basis"] = strings(r.precondition_ideal.groebner_basis());
  return out;
}

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

json numeric_json(const NumericReport& nr, const NumericOptions& opts, std::size_t requested) {
  json checks = json::array();
  for (const auto& c : nr.checks)
    checks.push_back({{"polynomial", c.polynomial}, {"passed", c.passed}, {"worst_ratio", format_ratio(c.worst_ratio)}});
  json failures = json::array();
  for (const auto& f : nr.failures)
    failures.push_back({{"polynomial", f.polynomial}, {"point", f.point}, {"time", f.time}, {"value", format_ratio(f.value)}});
  return {{"samples_requested", requested},
          {"samples_used", nr.samples_used},
          {"horizon", opts.horizon},
          {"step", opts.step},
          {"tolerance", opts.tolerance},
          {"passed", nr.passed() && nr.samples_used > 0},
          {"followed_until", nr.followed_until},
          {"checks", checks},
          {"failures", failures}};
}

struct Outcome {
  int exit_code = exit_holds;
  std::vector<Polynomial> numeric_targets;
  std::vector<Polynomial> sample_from;
};

}  // namespace

json stable_content(const json& report) {
  json out = report;
  out.erase("timings");
  return out;
}

RunReport run(const SystemSpec& spec, const RunOptions& options) {
  RunReport report;
  json& doc = report.document;
  doc["name"] = spec.name;
  doc["query"] = to_string(spec.kind);
  doc["order"] = spec.options.order;
  json timings = json::object();
  auto t0 = Clock::now();
  try {
    BuiltSystem sys = build_system(spec);
    timings["build_ms"] = ms_since(t0);
    doc["variables"] = sys.ring->nvars();
    ChainOptions co;
    co.max_iterations = spec.options.max_iterations;
    co.gb = spec.options.gb;
    co.exec = options.exec;

    auto require_template = [&]() -> const Template& {
      if (!sys.templ) throw SpecError(to_string(spec.kind) + " query needs 'query.template'");
      return *sys.templ;
    };
    auto require_polys = [&]() -> const std::vector<Polynomial>& {
      if (sys.polynomials.empty()) throw SpecError(to_string(spec.kind) + " query needs 'query.polynomials'");
      return sys.polynomials;
    };

    Outcome outcome;
    auto t1 = Clock::now();
    switch (spec.kind) {
      case QueryKind::post: {
        const Template& t = require_template();
        doc["radical"] = to_string(sys.precondition.mode);
        auto r = post(sys.precondition, t, sys.field, co);
        doc["result"] = post_json(r, t);
        outcome.numeric_targets = r.result.result.components();
        for (const auto& g : r.invariant_ideal.groebner_basis()) outcome.numeric_targets.push_back(g);
        outcome.sample_from = sys.precondition.generators;
        break;
      }
      case QueryKind::weakest_pre: {
        const Template& t = require_template();
        doc["radical"] = to_string(sys.precondition.mode);
        auto w = weakest_precondition_via_post(sys.precondition, t, sys.field, co);
        doc["result"] = post_json(w.post, t);
        doc["result"]["weakest_precondition"] = strings(w.ideal.groebner_basis());
        outcome.numeric_targets = w.ideal.groebner_basis();
        outcome.sample_from = sys.precondition.generators;
        break;
      }
      case QueryKind::pre: {
        auto r = pre(require_polys(), sys.field, co);
        doc["result"] = {{"iterations", r.iterations},
                         {"trace", trace_json(r.trace, false)},
                         {"derivative_closure", strings(r.derivative_closure)},
                         {"ideal", {{"groebner_basis", strings(r.ideal.groebner_basis())}}}};
        outcome.numeric_targets = r.ideal.groebner_basis();
        outcome.sample_from = r.ideal.groebner_basis();
        break;
      }
      case QueryKind::check: {
        doc["radical"] = to_string(sys.precondition.mode);
        auto r = check_safety(sys.precondition, require_polys(), sys.field, co);
        doc["verdict"] = to_string(r.verdict);
        std::vector<std::string> names;
        for (std::size_t k = 0; k < sys.polynomials.size(); ++k) names.push_back("a" + std::to_string(k + 1));
        doc["result"] = post_json(r.post, Template(sys.ring, names, sys.polynomials));
        if (r.witness) {
          json point = json::object();
          for (std::size_t i = 0; i < r.witness->point.size(); ++i)
            point[sys.ring->universe().symbol(i).name] = to_string(r.witness->point[i]);
          doc["witness"] = {{"point", point},
                            {"polynomial", sys.polynomials[r.witness->polynomial].to_string()},
                            {"derivative_order", r.witness->derivative_order},
                            {"value", to_string(r.witness->value)}};
        }
        outcome.exit_code = r.verdict == Verdict::holds  ? exit_holds
                            : r.verdict == Verdict::fails ? exit_fails
                                                          : exit_inconclusive;
        if (r.verdict == Verdict::holds) outcome.numeric_targets = sys.polynomials;
        outcome.sample_from = sys.precondition.generators;
        break;
      }
      case QueryKind::invariant: {
        Ideal ideal(sys.ring, require_polys(), co.gb);
        bool ok = check_invariant_ideal(ideal, sys.field);
        json offending = json::array();
        for (const auto& g : ideal.groebner_basis()) {
          Polynomial d = lie_derivative(g, sys.field);
          if (!ideal.contains(d)) offending.push_back({{"generator", g.to_string()}, {"lie_derivative", d.to_string()}});
        }
        doc["verdict"] = ok ? "holds" : "fails";
        doc["result"] = {{"groebner_basis", strings(ideal.groebner_basis())}, {"not_closed", offending}};
        outcome.exit_code = ok ? exit_holds : exit_fails;
        if (ok) {
          outcome.numeric_targets = ideal.groebner_basis();
          outcome.sample_from = ideal.groebner_basis();
        }
        break;
      }
      case QueryKind::lie: {
        json chains = json::array();
        for (const auto& p : sys.polynomials) {
          json chain = json::array();
          Polynomial q = p;
          for (unsigned j = 0; j <= spec.lie_order; ++j) {
            chain.push_back(q.to_string());
            q = lie_derivative(q, sys.field);
          }
          chains.push_back(chain);
        }
        json result = {{"order", spec.lie_order}, {"polynomials", chains}};
        if (sys.templ) {
          json chain = json::array();
          Template t = *sys.templ;
          for (unsigned j = 0; j <= spec.lie_order; ++j) {
            chain.push_back(t.to_string_by_monomial());
            t = lie_template(t, sys.field, options.exec);
          }
          result["template"] = chain;
        }
        if (sys.polynomials.empty() && !sys.templ) throw SpecError("lie query needs polynomials or a template");
        doc["result"] = result;
        break;
      }
    }
    timings["algorithm_ms"] = ms_since(t1);

    const bool numeric = options.numeric_check.value_or(spec.options.numeric_check);
    if (numeric && !outcome.numeric_targets.empty()) {
      auto t2 = Clock::now();
      auto points = sys.samples;
      if (points.empty()) points = sample_points(outcome.sample_from, sys.ring, spec.options.sampler);
      NumericOptions nopt = spec.options.numeric;
      nopt.exec = options.exec;
      auto nr = numeric_verify(sys.field, outcome.numeric_targets, points, nopt);
      doc["numeric"] = numeric_json(nr, nopt, sys.samples.empty() ? spec.options.sampler.count : sys.samples.size());
      if (!nr.passed() && outcome.exit_code == exit_holds) outcome.exit_code = exit_fails;
      timings["numeric_ms"] = ms_since(t2);
    }
    report.exit_code = outcome.exit_code;
  } catch (const ResourceLimitExceeded& e) {
    doc["error"] = {{"kind", "resource-limit"}, {"message", e.what()}};
    report.exit_code = exit_resource_limit;
  } catch (const IterationCapExceeded& e) {
    doc["error"] = {{"kind", "iteration-cap"}, {"message", e.what()}};
    report.exit_code = exit_resource_limit;
  } catch (const ModeError& e) {
    doc["error"] = {{"kind", "mode"}, {"message", e.what()}};
    report.exit_code = exit_input_error;
  } catch (const ParseError& e) {
    doc["error"] = {{"kind", "parse"}, {"message", e.what()}};
    report.exit_code = exit_input_error;
  } catch (const std::invalid_argument& e) {
    doc["error"] = {{"kind", "input"}, {"message", e.what()}};
    report.exit_code = exit_input_error;
  } catch (const std::exception& e) {
    doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
    report.exit_code = exit_internal_error;
  }
  timings["total_ms"] = ms_since(t0);
  doc["exit_code"] = report.exit_code;
  doc["timings"] = timings;
  report.text = render_text(doc);
  return report;
}

std::string render_text(const json& doc) {
  std::ostringstream os;
  os << doc.value("name", std::string("?")) << ": " << doc.value("query", std::string("?")) << "\n";
  if (doc.contains("error")) {
    os << "error (" << doc["error"]["kind"].get<std::string>() << "): " << doc["error"]["message"].get<std::string>()
       << "\n";
    return os.str();
  }
  if (doc.contains("verdict")) os << "verdict: " << doc["verdict"].get<std::string>() << "\n";
  if (doc.contains("result")) {
    const json& r = doc["result"];
    if (r.contains("iterations")) os << "iterations m = " << r["iterations"] << "\n";
    if (r.contains("trace")) {
      os << "chain:";
      for (const auto& s : r["trace"]) {
        os << " [" << s["step"];
        if (s.contains("dim_v")) os << ": dim V = " << s["dim_v"];
        else os << ": " << s["ideal_generators"] << " generators";
        os << "]";
      }
      os << "\n";
    }
    if (r.contains("valuations")) os << "dim V = " << r["valuations"]["dimension"] << " of " << r["template_parameters"] << "\n";
    if (r.contains("result_template")) os << "result template: " << r["result_template"]["expression"].get<std::string>() << "\n";
    auto list = [&](const char* title, const json& ps) {
      os << title << " (" << ps.size() << "):\n";
      for (const auto& p : ps) os << "  " << p.get<std::string>() << "\n";
    };
    if (r.contains("invariant_ideal")) list("reduced basis of J", r["invariant_ideal"]["groebner_basis"]);
    if (r.contains("weakest_precondition")) list("weakest precondition", r["weakest_precondition"]);
    if (r.contains("ideal")) list("reduced basis of I", r["ideal"]["groebner_basis"]);
    if (r.contains("groebner_basis")) list("reduced basis", r["groebner_basis"]);
    if (r.contains("not_closed") && !r["not_closed"].empty()) {
      os << "not closed under the Lie derivative:\n";
      for (const auto& n : r["not_closed"])
        os << "  L(" << n["generator"].get<std::string>() << ") = " << n["lie_derivative"].get<std::string>() << "\n";
    }
    if (r.contains("polynomials") && r["polynomials"].is_array()) {
      for (const auto& chain : r["polynomials"]) {
        unsigned j = 0;
        for (const auto& p : chain) os << "L^" << j++ << ": " << p.get<std::string>() << "\n";
      }
    }
    if (r.contains("template")) {
      unsigned j = 0;
      for (const auto& p : r["template"]) os << "pi^(" << j++ << "): " << p.get<std::string>() << "\n";
    }
  }
  if (doc.contains("witness")) {
    const json& w = doc["witness"];
    os << "witness: L^" << w["derivative_order"] << "(" << w["polynomial"].get<std::string>() << ") = "
       << w["value"].get<std::string>() << " at";
    for (const auto& [k, v] : w["point"].items()) os << " " << k << "=" << v.get<std::string>();
    os << "\n";
  }
  if (doc.contains("numeric")) {
    const json& n = doc["numeric"];
    os << "numeric check: " << (n["passed"].get<bool>() ? "passed" : "FAILED") << " (" << n["samples_used"]
       << " samples, horizon " << n["horizon"] << ", step " << n["step"] << ")\n";
    if (n.contains("followed_until")) {
      std::size_t cut = 0;
      for (const auto& t : n["followed_until"])
        if (t.get<double>() < n["horizon"].get<double>()) ++cut;
      if (cut) os << "  " << cut << " trajectories stopped early where the integration lost accuracy\n";
    }
    for (const auto& f : n["failures"])
      os << "  " << f["polynomial"].get<std::string>() << " reaches " << f["value"].get<std::string>() << " at t = "
         << f["time"] << "\n";
  }
  return os.str();
}

}  // namespace alginv
