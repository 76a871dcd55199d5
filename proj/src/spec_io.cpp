#include "alginv/spec_io.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "alginv/parser.hpp"

namespace alginv {

using nlohmann::json;

std::string to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::post: return "post";
    case QueryKind::pre: return "pre";
    case QueryKind::check: return "check";
    case QueryKind::invariant: return "invariant";
    case QueryKind::weakest_pre: return "weakest-pre";
    case QueryKind::lie: return "lie";
  }
  return "?";
}

QueryKind parse_query_kind(std::string_view text) {
  if (text == "post") return QueryKind::post;
  if (text == "pre") return QueryKind::pre;
  if (text == "check") return QueryKind::check;
  if (text == "invariant") return QueryKind::invariant;
  if (text == "weakest-pre" || text == "weakest_pre") return QueryKind::weakest_pre;
  if (text == "lie") return QueryKind::lie;
  throw SpecError("unknown query kind '" + std::string(text) + "'");
}

namespace {

// ------------------------------------------------------------- YAML -> JSON

json from_yaml(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string& s = node.Scalar();
      if (node.Tag() == "!") return s;  // quoted
      static const std::regex integer("[-+]?[0-9]+");
      if (std::regex_match(s, integer) && s.size() < 18) return std::stoll(s);
      if (s == "true") return true;
      if (s == "false") return false;
      if (s == "null" || s == "~") return nullptr;
      return s;
    }
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      for (const auto& item : node) arr.push_back(from_yaml(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node) obj[kv.first.as<std::string>()] = from_yaml(kv.second);
      return obj;
    }
  }
  return nullptr;
}

// ------------------------------------------------------------- field readers

std::string where(const std::string& ctx, const std::string& key) {
  return ctx.empty() ? key : ctx + "." + key;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& ctx) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw SpecError("unknown field '" + where(ctx, key) + "'");
  }
}

std::string as_text(const json& v, const std::string& ctx) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw SpecError("'" + ctx + "' must be a string or a number");
}

std::vector<std::string> as_text_list(const json& v, const std::string& ctx) {
  if (v.is_null()) return {};
  if (!v.is_array()) throw SpecError("'" + ctx + "' must be a list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_text(v[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

unsigned long long as_count(const json& v, const std::string& ctx) {
  if (v.is_number_integer() && v.get<long long>() >= 0) return v.get<unsigned long long>();
  if (v.is_number_unsigned()) return v.get<unsigned long long>();
  throw SpecError("'" + ctx + "' must be a nonnegative integer");
}

double as_real(const json& v, const std::string& ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>()).get_d();
    } catch (const std::invalid_argument&) {
    }
  }
  throw SpecError("'" + ctx + "' must be a number");
}

bool as_bool(const json& v, const std::string& ctx) {
  if (!v.is_boolean()) throw SpecError("'" + ctx + "' must be true or false");
  return v.get<bool>();
}

TemplateSpec read_template(const json& t) {
  if (t.is_string()) {
    TemplateSpec ts;
    ts.expression = t.get<std::string>();
    return ts;
  }
  if (!t.is_object()) throw SpecError("'query.template' must be a mapping");
  reject_unknown(t, {"complete", "variables", "auxiliary", "auxiliary_degree", "expression", "parameters"},
                 "query.template");
  TemplateSpec ts;
  if (t.contains("complete")) ts.degree = static_cast<unsigned>(as_count(t["complete"], "query.template.complete"));
  if (t.contains("variables")) ts.variables = as_text_list(t["variables"], "query.template.variables");
  if (t.contains("auxiliary")) {
    const auto& aux = t["auxiliary"];
    if (!aux.is_object()) throw SpecError("'query.template.auxiliary' must map names to expressions");
    for (const auto& [name, expr] : aux.items())
      ts.auxiliary.emplace_back(name, as_text(expr, "query.template.auxiliary." + name));
  }
  if (t.contains("auxiliary_degree")) {
    ts.auxiliary_degree =
        static_cast<unsigned>(as_count(t["auxiliary_degree"], "query.template.auxiliary_degree"));
    if (ts.auxiliary.empty()) throw SpecError("'auxiliary_degree' needs 'auxiliary'");
  }
  if (t.contains("expression")) ts.expression = as_text(t["expression"], "query.template.expression");
  if (t.contains("parameters")) ts.parameters = as_text_list(t["parameters"], "query.template.parameters");
  if (ts.degree && !ts.expression.empty())
    throw SpecError("a template is either 'complete' or an 'expression', not both");
  if (!ts.degree && ts.expression.empty())
    throw SpecError("a template needs 'complete: <degree>' or 'expression'");
  if (!ts.degree && (!ts.variables.empty() || !ts.auxiliary.empty()))
    throw SpecError("'variables' and 'auxiliary' only apply to complete templates");
  if (ts.degree && !ts.parameters.empty())
    throw SpecError("'parameters' only applies to expression templates");
  return ts;
}

json template_to_json(const TemplateSpec& ts) {
  json t = json::object();
  if (ts.degree) {
    t["complete"] = *ts.degree;
    if (!ts.variables.empty()) t["variables"] = ts.variables;
    if (!ts.auxiliary.empty()) {
      json aux = json::object();
      for (const auto& [name, expr] : ts.auxiliary) aux[name] = expr;
      t["auxiliary"] = aux;
      if (ts.auxiliary_degree != 1) t["auxiliary_degree"] = ts.auxiliary_degree;
    }
  } else {
    t["expression"] = ts.expression;
    if (!ts.parameters.empty()) t["parameters"] = ts.parameters;
  }
  return t;
}

std::vector<std::string> parameters_in(const std::string& expression, const std::set<std::string>& states) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::sregex_iterator it(expression.begin(), expression.end(), ident), end; it != end; ++it) {
    // skip the exponent part of decimal literals such as 1e-3
    if (it->position() > 0 && std::isdigit(static_cast<unsigned char>(expression[it->position() - 1])))
      continue;
    std::string name = it->str();
    if (!states.count(name) && seen.insert(name).second) out.push_back(name);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- parse

SystemSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("a spec must be a mapping at top level");
  reject_unknown(doc, {"name", "variables", "constants", "field", "precondition", "query", "options", "samples"}, "");
  SystemSpec spec;
  if (doc.contains("name")) spec.name = as_text(doc["name"], "name");
  if (!doc.contains("variables")) throw SpecError("missing 'variables'");
  spec.variables = as_text_list(doc["variables"], "variables");
  if (doc.contains("constants")) spec.constants = as_text_list(doc["constants"], "constants");

  if (doc.contains("field")) {
    const auto& f = doc["field"];
    if (!f.is_object()) throw SpecError("'field' must map each variable to its drift");
    for (const auto& [name, expr] : f.items()) spec.field[name] = as_text(expr, "field." + name);
  }

  if (doc.contains("precondition")) {
    const auto& p = doc["precondition"];
    if (p.is_array()) {
      spec.precondition = as_text_list(p, "precondition");
    } else if (p.is_object()) {
      reject_unknown(p, {"generators", "radical", "exact"}, "precondition");
      if (p.contains("generators")) spec.precondition = as_text_list(p["generators"], "precondition.generators");
      if (p.contains("radical")) {
        try {
          spec.radical = parse_radical_mode(as_text(p["radical"], "precondition.radical"));
        } catch (const std::invalid_argument& e) {
          throw SpecError(e.what());
        }
      }
      if (p.contains("exact")) spec.declared_exact = as_bool(p["exact"], "precondition.exact");
    } else if (!p.is_null()) {
      throw SpecError("'precondition' must be a list or a mapping");
    }
  }

  if (!doc.contains("query")) throw SpecError("missing 'query'");
  const auto& q = doc["query"];
  if (!q.is_object()) throw SpecError("'query' must be a mapping");
  reject_unknown(q, {"kind", "template", "polynomials", "order"}, "query");
  if (!q.contains("kind")) throw SpecError("missing 'query.kind'");
  spec.kind = parse_query_kind(as_text(q["kind"], "query.kind"));
  if (q.contains("template")) spec.templ = read_template(q["template"]);
  if (q.contains("polynomials")) spec.polynomials = as_text_list(q["polynomials"], "query.polynomials");
  if (q.contains("order")) spec.lie_order = static_cast<unsigned>(as_count(q["order"], "query.order"));

  if (doc.contains("options")) {
    const auto& o = doc["options"];
    if (!o.is_object()) throw SpecError("'options' must be a mapping");
    reject_unknown(o, {"order", "max_iterations", "pair_budget", "degree_cap", "numeric_check", "numeric"}, "options");
    auto& opt = spec.options;
    if (o.contains("order")) opt.order = as_text(o["order"], "options.order");
    if (o.contains("max_iterations")) opt.max_iterations = static_cast<unsigned>(as_count(o["max_iterations"], "options.max_iterations"));
    if (o.contains("pair_budget")) opt.gb.pair_budget = as_count(o["pair_budget"], "options.pair_budget");
    if (o.contains("degree_cap")) opt.gb.degree_cap = static_cast<unsigned>(as_count(o["degree_cap"], "options.degree_cap"));
    if (o.contains("numeric_check")) opt.numeric_check = as_bool(o["numeric_check"], "options.numeric_check");
    if (o.contains("numeric")) {
      const auto& n = o["numeric"];
      if (!n.is_object()) throw SpecError("'options.numeric' must be a mapping");
      reject_unknown(n, {"horizon", "step", "tolerance", "samples", "seed"}, "options.numeric");
      if (n.contains("horizon")) opt.numeric.horizon = as_real(n["horizon"], "options.numeric.horizon");
      if (n.contains("step")) opt.numeric.step = as_real(n["step"], "options.numeric.step");
      if (n.contains("tolerance")) opt.numeric.tolerance = as_real(n["tolerance"], "options.numeric.tolerance");
      if (n.contains("samples")) opt.sampler.count = as_count(n["samples"], "options.numeric.samples");
      if (n.contains("seed")) opt.sampler.seed = as_count(n["seed"], "options.numeric.seed");
    }
  }

  if (doc.contains("samples")) {
    const auto& s = doc["samples"];
    if (!s.is_array()) throw SpecError("'samples' must be a list of points");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_object()) throw SpecError("each sample must map variables to values");
      std::map<std::string, std::string> point;
      for (const auto& [name, value] : s[i].items())
        point[name] = as_text(value, "samples[" + std::to_string(i) + "]." + name);
      spec.samples.push_back(std::move(point));
    }
  }
  return spec;
}

SystemSpec parse_spec(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw SpecError(std::string("malformed spec document: ") + e.what());
  }
  return spec_from_json(from_yaml(root));
}

SystemSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read spec file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  SystemSpec spec = parse_spec(buf.str());
  if (spec.name.empty()) spec.name = path.stem().string();
  return spec;
}

json spec_to_json(const SystemSpec& spec) {
  json doc = json::object();
  doc["name"] = spec.name;
  doc["variables"] = spec.variables;
  if (!spec.constants.empty()) doc["constants"] = spec.constants;
  doc["field"] = spec.field;
  json pre = json::object();
  pre["generators"] = spec.precondition;
  pre["radical"] = to_string(spec.radical);
  if (spec.declared_exact) pre["exact"] = true;
  doc["precondition"] = pre;
  json q = json::object();
  q["kind"] = to_string(spec.kind);
  if (spec.templ) q["template"] = template_to_json(*spec.templ);
  if (!spec.polynomials.empty()) q["polynomials"] = spec.polynomials;
  if (spec.kind == QueryKind::lie) q["order"] = spec.lie_order;
  doc["query"] = q;
  const auto& o = spec.options;
  doc["options"] = {{"order", o.order},
                    {"max_iterations", o.max_iterations},
                    {"pair_budget", o.gb.pair_budget},
                    {"degree_cap", o.gb.degree_cap},
                    {"numeric_check", o.numeric_check},
                    {"numeric",
                     {{"horizon", o.numeric.horizon},
                      {"step", o.numeric.step},
                      {"tolerance", o.numeric.tolerance},
                      {"samples", o.sampler.count},
                      {"seed", o.sampler.seed}}}};
  if (!spec.samples.empty()) doc["samples"] = spec.samples;
  return doc;
}

// ---------------------------------------------------------------- build

Template build_template(const TemplateSpec& ts, const RingPtr& ring, const std::string& prefix) {
  const auto& u = ring->universe();
  if (!ts.degree) {
    std::vector<std::string> params = ts.parameters;
    if (params.empty()) {
      std::set<std::string> states;
      for (const auto& s : u.symbols()) states.insert(s.name);
      params = parameters_in(ts.expression, states);
    }
    for (const auto& a : params)
      if (u.find(a)) throw SpecError("template parameter '" + a + "' clashes with a state variable");
    auto joint = joint_ring(params, ring);
    Polynomial p = parse_polynomial(ts.expression, joint);
    try {
      return Template::from_polynomial(p, ring);
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("template expression: ") + e.what());
    }
  }

  std::vector<std::size_t> vars;
  if (ts.variables.empty()) {
    for (std::size_t i = 0; i < u.size(); ++i) vars.push_back(i);
  } else {
    for (const auto& v : ts.variables) vars.push_back(u.index_of(v));
  }
  if (ts.auxiliary.empty()) return complete_template(ring, vars, *ts.degree, prefix);

  // Auxiliary symbols join the variables as extra monomial factors and are
  // replaced by their expressions afterwards.
  std::vector<Symbol> syms = u.symbols();
  std::vector<Polynomial> aux_value;
  for (const auto& [name, expr] : ts.auxiliary) {
    if (u.find(name)) throw SpecError("auxiliary symbol '" + name + "' clashes with a state variable");
    aux_value.push_back(parse_polynomial(expr, ring));
    syms.push_back({name, SymbolKind::state});
  }
  auto ext_u = SymbolUniverse::create(std::move(syms));
  auto ext = PolyRing::create(ext_u, MonomialOrder::grevlex(*ext_u));
  std::vector<std::size_t> ext_vars = vars;
  for (std::size_t k = 0; k < aux_value.size(); ++k) ext_vars.push_back(u.size() + k);
  Template full = complete_template(ext, ext_vars, *ts.degree, prefix);

  std::vector<std::string> names;
  std::vector<Polynomial> comps;
  for (const auto& c : full.components()) {
    const Monomial& m = c.leading_monomial();
    unsigned aux_degree = 0;
    for (std::size_t k = 0; k < aux_value.size(); ++k) aux_degree += m[u.size() + k];
    if (aux_degree > ts.auxiliary_degree) continue;
    Monomial base(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) base.set(i, m[i]);
    Polynomial p = Polynomial::monomial(ring, base);
    for (std::size_t k = 0; k < aux_value.size(); ++k)
      for (unsigned e = 0; e < m[u.size() + k]; ++e) p = p * aux_value[k];
    comps.push_back(std::move(p));
    names.push_back(prefix + std::to_string(comps.size()));
  }
  return Template(ring, std::move(names), std::move(comps));
}

BuiltSystem build_system(const SystemSpec& spec) {
  std::vector<std::string> names = spec.variables;
  names.insert(names.end(), spec.constants.begin(), spec.constants.end());
  if (names.empty()) throw SpecError("no variables declared");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) throw SpecError("a variable is declared twice");
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  for (const auto& n : names)
    if (!std::regex_match(n, ident)) throw SpecError("'" + n + "' is not a valid variable name");

  auto u = SymbolUniverse::states(names);
  MonomialOrder order;
  if (spec.options.order == "grevlex") order = MonomialOrder::grevlex(*u);
  else if (spec.options.order == "lex") order = MonomialOrder::lex(*u);
  else throw SpecError("unknown monomial order '" + spec.options.order + "' (expected grevlex or lex)");
  const RingPtr ring = PolyRing::create(u, order);

  for (const auto& [name, _] : spec.field)
    if (!u->find(name)) throw SpecError("drift given for undeclared variable '" + name + "'");
  std::vector<Polynomial> drifts;
  for (const auto& v : spec.variables) {
    auto it = spec.field.find(v);
    if (it == spec.field.end()) throw SpecError("no drift for variable '" + v + "'");
    drifts.push_back(parse_polynomial(it->second, ring));
  }
  for (const auto& c : spec.constants) {
    if (spec.field.count(c)) throw SpecError("constant '" + c + "' must not have a drift");
    drifts.push_back(Polynomial(ring));
  }
  BuiltSystem sys{ring, VectorField(ring, std::move(drifts)), {}, {}, {}, {}};

  for (const auto& g : spec.precondition) sys.precondition.generators.push_back(parse_polynomial(g, ring));
  sys.precondition.mode = spec.radical;
  sys.precondition.declared_exact = spec.declared_exact;

  if (spec.templ) sys.templ = build_template(*spec.templ, ring);
  for (const auto& p : spec.polynomials) sys.polynomials.push_back(parse_polynomial(p, ring));

  for (const auto& s : spec.samples) {
    std::vector<Rational> point(u->size());
    for (const auto& [name, _] : s)
      if (!u->find(name)) throw SpecError("sample binds undeclared variable '" + name + "'");
    for (std::size_t i = 0; i < u->size(); ++i) {
      auto it = s.find(u->symbol(i).name);
      if (it == s.end()) throw SpecError("sample misses variable '" + u->symbol(i).name + "'");
      try {
        point[i] = parse_rational(it->second);
      } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("sample value: ") + e.what());
      }
    }
    sys.samples.push_back(std::move(point));
  }
  return sys;
}

}  // namespace alginv
