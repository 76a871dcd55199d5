#pragma once

// System specification files (YAML or JSON), the run driver and its reports.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "alginv/algorithms.hpp"
#include "alginv/numeric.hpp"

namespace alginv {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class QueryKind { post, pre, check, invariant, weakest_pre, lie };

std::string to_string(QueryKind kind);
QueryKind parse_query_kind(std::string_view text);

struct TemplateSpec {
  // complete: every monomial of degree <= degree over `variables` (all state
  // variables when empty). Auxiliary symbols stand for polynomials; a
  // monomial keeps at most auxiliary_degree auxiliary factors.
  std::optional<unsigned> degree;
  std::vector<std::string> variables;
  std::vector<std::pair<std::string, std::string>> auxiliary;
  unsigned auxiliary_degree = 1;
  // explicit: an expression linear in `parameters`.
  std::string expression;
  std::vector<std::string> parameters;
};

struct SpecOptions {
  std::string order = "grevlex";
  unsigned max_iterations = 64;
  GbOptions gb;
  bool numeric_check = false;
  NumericOptions numeric;
  SamplerOptions sampler;
};

struct SystemSpec {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> constants;  // zero-drift variables appended after `variables`
  std::map<std::string, std::string> field;
  std::vector<std::string> precondition;
  RadicalMode radical = RadicalMode::generators;
  bool declared_exact = false;
  QueryKind kind = QueryKind::post;
  std::optional<TemplateSpec> templ;
  std::vector<std::string> polynomials;
  unsigned lie_order = 2;
  SpecOptions options;
  std::vector<std::map<std::string, std::string>> samples;
};

// Structured text accepted: YAML (a superset of JSON). Throws SpecError.
SystemSpec parse_spec(const std::string& text);
SystemSpec load_spec(const std::filesystem::path& path);
nlohmann::json spec_to_json(const SystemSpec& spec);
SystemSpec spec_from_json(const nlohmann::json& doc);

// The spec's objects over one ring.
struct BuiltSystem {
  RingPtr ring;
  VectorField field;
  Precondition precondition;
  std::optional<Template> templ;
  std::vector<Polynomial> polynomials;
  std::vector<std::vector<Rational>> samples;
};

BuiltSystem build_system(const SystemSpec& spec);

// Template over `ring` described by `ts`; parameters are named by `prefix`.
Template build_template(const TemplateSpec& ts, const RingPtr& ring, const std::string& prefix = "a");

struct RunOptions {
  Exec exec = kernels::default_exec();
  std::optional<bool> numeric_check;  // overrides the spec when set
};

struct RunReport {
  nlohmann::json document;  // "timings" holds the only run-dependent values
  std::string text;
  int exit_code = 0;
};

enum ExitCode : int {
  exit_holds = 0,
  exit_fails = 1,
  exit_inconclusive = 2,
  exit_input_error = 3,
  exit_resource_limit = 4,
  exit_internal_error = 5,
};

// Never throws for input problems: errors become a report with an error
// section and an exit code above 2.
RunReport run(const SystemSpec& spec, const RunOptions& options = {});

// Report without the "timings" member, for regression comparison.
nlohmann::json stable_content(const nlohmann::json& report);

std::string render_text(const nlohmann::json& report);

}  // namespace alginv
