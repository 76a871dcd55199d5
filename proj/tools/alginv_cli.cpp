// alginv: command-line front end for spec files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "alginv/parser.hpp"
#include "alginv/spec_io.hpp"

namespace fs = std::filesystem;
using namespace alginv;
using nlohmann::json;

namespace {

struct Overrides {
  std::string order;
  std::string radical;
  unsigned max_iterations = 0;
  std::size_t pair_budget = 0;
  unsigned degree_cap = 0;
  std::string report_path;
  bool json_out = false;
  bool serial = false;
  bool numeric = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--order", o.order, "State-variable monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
  cmd->add_option("--radical", o.radical, "Precondition ideal mode")
      ->check(CLI::IsMember({"generators", "singleton", "user-supplied"}));
  cmd->add_option("--max-iterations", o.max_iterations, "Chain iteration cap");
  cmd->add_option("--pair-budget", o.pair_budget, "S-pair budget per Groebner basis");
  cmd->add_option("--degree-cap", o.degree_cap, "Largest S-pair degree");
  cmd->add_option("--report", o.report_path, "Write the JSON report to this file");
  cmd->add_flag("--json", o.json_out, "Print the JSON report instead of text");
  cmd->add_flag("--serial", o.serial, "Use the serial kernels");
  cmd->add_flag("--numeric", o.numeric, "Also run the RK4 numeric check");
}

void apply(SystemSpec& spec, const Overrides& o) {
  if (!o.order.empty()) spec.options.order = o.order;
  if (!o.radical.empty()) spec.radical = parse_radical_mode(o.radical);
  if (o.max_iterations) spec.options.max_iterations = o.max_iterations;
  if (o.pair_budget) spec.options.gb.pair_budget = o.pair_budget;
  if (o.degree_cap) spec.options.gb.degree_cap = o.degree_cap;
}

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, path);
}

int emit(const RunReport& r, const Overrides& o) {
  if (!o.report_path.empty()) write_atomically(o.report_path, r.document.dump(2) + "\n");
  if (o.json_out) std::cout << r.document.dump(2) << "\n";
  else std::cout << r.text;
  return r.exit_code;
}

RunReport failed_load(const std::string& file, const std::exception& e) {
  RunReport r;
  r.document = {{"name", file}, {"error", {{"kind", "input"}, {"message", e.what()}}}, {"exit_code", exit_input_error}};
  r.text = render_text(r.document);
  r.exit_code = exit_input_error;
  return r;
}

int run_file(const std::string& file, std::optional<QueryKind> kind, const Overrides& o) {
  SystemSpec spec;
  try {
    spec = load_spec(file);
    apply(spec, o);
  } catch (const std::exception& e) {
    return emit(failed_load(file, e), o);
  }
  if (kind) spec.kind = *kind;
  RunOptions ro;
  ro.exec = o.serial ? Exec::serial : kernels::default_exec();
  if (o.numeric) ro.numeric_check = true;
  return emit(run(spec, ro), o);
}

std::vector<Rational> parse_point(const std::string& text, const SymbolUniverse& u) {
  std::vector<std::optional<Rational>> values(u.size());
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("point entries look like name=value");
    auto name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    values[u.index_of(name)] = parse_rational(item.substr(eq + 1));
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!values[i]) throw std::invalid_argument("point leaves '" + u.symbol(i).name + "' unset");
    out.push_back(*values[i]);
  }
  return out;
}

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int verify_numeric(const std::string& file, const std::vector<std::string>& invariants,
                   const std::vector<std::string>& points, std::size_t samples, double horizon, double step,
                   double tolerance, const Overrides& o) {
  SystemSpec spec;
  try {
    spec = load_spec(file);
    apply(spec, o);
    if (samples) spec.options.sampler.count = samples;
    if (horizon > 0) spec.options.numeric.horizon = horizon;
    if (step > 0) spec.options.numeric.step = step;
    if (tolerance > 0) spec.options.numeric.tolerance = tolerance;
  } catch (const std::exception& e) {
    return emit(failed_load(file, e), o);
  }
  RunOptions ro;
  ro.exec = o.serial ? Exec::serial : kernels::default_exec();
  if (invariants.empty() && points.empty()) {
    ro.numeric_check = true;
    return emit(run(spec, ro), o);
  }

  RunReport r;
  r.document = {{"name", spec.name}, {"query", "verify-numeric"}};
  try {
    BuiltSystem sys = build_system(spec);
    std::vector<Polynomial> polys;
    for (const auto& p : invariants) polys.push_back(parse_polynomial(p, sys.ring));
    if (polys.empty()) throw std::invalid_argument("--point needs at least one --invariant");
    auto pts = sys.samples;
    for (const auto& p : points) pts.push_back(parse_point(p, sys.ring->universe()));
    if (pts.empty()) pts = sample_points(sys.precondition.generators, sys.ring, spec.options.sampler);
    NumericOptions nopt = spec.options.numeric;
    nopt.exec = ro.exec;
    auto nr = numeric_verify(sys.field, polys, pts, nopt);
    json checks = json::array();
    for (const auto& c : nr.checks) checks.push_back({{"polynomial", c.polynomial}, {"passed", c.passed}});
    json failures = json::array();
    for (const auto& f : nr.failures)
      failures.push_back(
          {{"polynomial", f.polynomial}, {"point", f.point}, {"time", f.time}, {"value", scientific(f.value)}});
    const bool passed = nr.passed() && nr.samples_used > 0;
    r.document["numeric"] = {{"samples_used", nr.samples_used}, {"horizon", nopt.horizon}, {"step", nopt.step},
                             {"tolerance", nopt.tolerance}, {"passed", passed},
                             {"followed_until", nr.followed_until}, {"checks", checks},
                             {"failures", failures}};
    r.exit_code = passed ? exit_holds : exit_fails;
  } catch (const std::exception& e) {
    r.document["error"] = {{"kind", "input"}, {"message", e.what()}};
    r.exit_code = exit_input_error;
  }
  r.document["exit_code"] = r.exit_code;
  r.text = render_text(r.document);
  return emit(r, o);
}

int corpus(const std::string& dir, const std::string& expected_dir, bool update, const Overrides& o) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml" || ext == ".json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int worst = 0;
  for (const auto& f : files) {
    SystemSpec spec;
    try {
      spec = load_spec(f);
      apply(spec, o);
    } catch (const std::exception& e) {
      std::cout << f.filename().string() << ": cannot load: " << e.what() << "\n";
      worst = std::max(worst, int(exit_input_error));
      continue;
    }
    RunOptions ro;
    ro.exec = o.serial ? Exec::serial : kernels::default_exec();
    RunReport r = run(spec, ro);
    json stable = stable_content(r.document);
    std::string status = "ran";
    if (!expected_dir.empty()) {
      fs::path expected = fs::path(expected_dir) / (f.stem().string() + ".json");
      if (update) {
        write_atomically(expected, stable.dump(2) + "\n");
        status = "updated";
      } else if (!fs::exists(expected)) {
        status = "no expected report";
        worst = std::max(worst, int(exit_fails));
      } else {
        std::ifstream in(expected);
        json want = json::parse(in);
        status = want == stable ? "matches" : "DIFFERS";
        if (want != stable) worst = std::max(worst, int(exit_fails));
      }
    }
    std::cout << f.filename().string() << ": exit " << r.exit_code << ", " << status << ", "
              << r.document["timings"]["total_ms"].get<double>() << " ms\n";
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic invariants, strongest postconditions and weakest preconditions of polynomial ODEs"};
  app.require_subcommand(1);
  Overrides o;
  std::string file;

  const std::map<std::string, std::pair<std::optional<QueryKind>, std::string>> queries = {
      {"run", {std::nullopt, "Run the query stated in the spec"}},
      {"post", {QueryKind::post, "Strongest postcondition of a template"}},
      {"pre", {QueryKind::pre, "Weakest precondition of a list of polynomials"}},
      {"check", {QueryKind::check, "Check the safety assertion precondition => [F] Var(polynomials)"}},
      {"invariant", {QueryKind::invariant, "Check that an ideal is invariant under the field"}},
      {"weakest-pre", {QueryKind::weakest_pre, "Weakest precondition of the postcondition found by post"}},
      {"lie", {QueryKind::lie, "Print iterated Lie derivatives"}},
  };
  std::map<std::string, CLI::App*> cmds;
  for (const auto& [name, q] : queries) {
    auto* cmd = app.add_subcommand(name, q.second);
    cmd->add_option("spec", file, "Spec file (YAML or JSON)")->required()->check(CLI::ExistingFile);
    add_common(cmd, o);
    cmds[name] = cmd;
  }

  auto* vn = app.add_subcommand("verify-numeric", "RK4 falsification check of invariants");
  std::vector<std::string> invariants, points;
  std::size_t samples = 0;
  double horizon = 0, step = 0, tolerance = 0;
  vn->add_option("spec", file, "Spec file")->required()->check(CLI::ExistingFile);
  vn->add_option("--invariant", invariants, "Polynomial to check instead of the query's results");
  vn->add_option("--point", points, "Initial point, e.g. x=1,y=1/2");
  vn->add_option("--samples", samples, "Number of sampled initial points");
  vn->add_option("--horizon", horizon, "Integration horizon");
  vn->add_option("--step", step, "RK4 step");
  vn->add_option("--tolerance", tolerance, "Relative tolerance");
  add_common(vn, o);

  auto* cp = app.add_subcommand("corpus", "Run every spec in a directory and compare with stored reports");
  std::string expected;
  bool update = false;
  cp->add_option("dir", file, "Directory of spec files")->required()->check(CLI::ExistingDirectory);
  cp->add_option("--expected", expected, "Directory of expected reports");
  cp->add_flag("--update", update, "Rewrite the expected reports");
  add_common(cp, o);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [name, cmd] : cmds)
      if (cmd->parsed()) return run_file(file, queries.at(name).first, o);
    if (vn->parsed()) return verify_numeric(file, invariants, points, samples, horizon, step, tolerance, o);
    if (cp->parsed()) return corpus(file, expected, update, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_internal_error;
  }
  return exit_internal_error;
}
