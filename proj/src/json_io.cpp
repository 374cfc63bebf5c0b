#include "gmtforms/json_io.hpp"

#include <tuple>
#include <utility>

#include "gmtforms/errors.hpp"
#include "gmtforms/rational.hpp"

namespace gmtforms {

namespace {

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

int int_field(const Json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number_integer())
    throw ParseError(std::string("missing or non-integer field \"") + name + "\"");
  return j[name].get<int>();
}

Json value_to_json(const CheckValue& v) {
  switch (v.kind) {
    case CheckValue::Kind::Integer:
      return v.integer;
    case CheckValue::Kind::Boolean:
      return v.boolean;
    default:
      return nullptr;
  }
}

Json optional_to_json(const std::optional<int>& v) {
  if (v) return *v;
  return nullptr;
}

void append_csv_field(std::string& line, const std::optional<int>& v) {
  line += ',';
  if (v) line += std::to_string(*v);
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json descriptor_to_json(const FormSpaceDescriptor& desc) {
  Json j;
  j["m"] = desc.m;
  j["k"] = desc.k;
  j["grades"] = desc.grades;
  return j;
}

FormSpaceDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("a space descriptor must be an object");
  return FormSpaceDescriptor::multi(int_field(j, "m"), int_field(j, "k"),
                                    j.contains("grades") ? int_list(j["grades"], "grades")
                                                         : throw ParseError("missing field \"grades\""));
}

Json polyform_to_json(const PolyForm& f) {
  Json j;
  j["m"] = f.m();
  j["k"] = f.k();
  Json terms = Json::array();
  for (const auto& [key, c] : f.terms()) {
    Json t;
    t["coeff"] = rat_to_string(c);
    t["exps"] = key.exps;
    t["blade"] = key.blade;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

PolyForm polyform_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("a form must be an object");
  PolyForm f(int_field(j, "m"), int_field(j, "k"));
  if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("missing or invalid field \"terms\"");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_string())
      throw ParseError("each term needs a string \"coeff\"");
    MultiIndex exps = int_list(t.contains("exps") ? t["exps"] : throw ParseError("missing field \"exps\""), "exps");
    Blade blade = int_list(t.contains("blade") ? t["blade"] : throw ParseError("missing field \"blade\""), "blade");
    f.add_term(exps, blade, rat_from_string(t["coeff"].get<std::string>()));
  }
  return f;
}

Json operator_to_json(const OperatorMatrix& op) {
  Json j;
  j["source"] = descriptor_to_json(op.source);
  j["target"] = descriptor_to_json(op.target);
  Json triplets = Json::array();
  for (const auto& [row, col, value] : op.mat.triplets())
    triplets.push_back(Json::array({row, col, rat_to_string(value)}));
  j["triplets"] = std::move(triplets);
  return j;
}

Json subspace_to_json(const Subspace& space) {
  Json j;
  j["ambient"] = descriptor_to_json(space.ambient());
  j["dim"] = space.dim();
  Json basis = Json::array();
  for (long i = 0; i < space.dim(); ++i) {
    Json row = Json::array();
    for (const Rat& c : space.basis_vector(i)) row.push_back(rat_to_string(c));
    basis.push_back(std::move(row));
  }
  j["basis"] = std::move(basis);
  return j;
}

Subspace subspace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient")) throw ParseError("a subspace must be an object with \"ambient\"");
  FormSpaceDescriptor ambient = descriptor_from_json(j["ambient"]);
  if (!j.contains("basis") || !j["basis"].is_array()) throw ParseError("missing or invalid field \"basis\"");
  const long width = ambient.dim();
  std::vector<SparseRow> rows;
  for (const auto& r : j["basis"]) {
    if (!r.is_array() || static_cast<long>(r.size()) != width)
      throw ParseError("each basis row must list one coordinate per ambient basis element");
    std::vector<Rat> dense;
    dense.reserve(r.size());
    for (const auto& c : r) {
      if (!c.is_string()) throw ParseError("coordinates must be rational strings");
      dense.push_back(rat_from_string(c.get<std::string>()));
    }
    rows.push_back(dense_to_sparse(dense));
  }
  Subspace space = Subspace::span(std::move(ambient), rows);
  if (j.contains("dim") && (!j["dim"].is_number_integer() || j["dim"].get<long>() != space.dim()))
    throw ParseError("declared dim does not match the basis");
  return space;
}

Json hodge_tuple_to_json(const HodgeTuple& tuple) {
  Json j;
  j["m"] = tuple.m;
  j["k"] = tuple.k;
  j["range"] = Json{{"r", tuple.range.r}, {"p", tuple.range.p}, {"q", tuple.range.q}};
  Json components = Json::array();
  for (const PolyForm& c : tuple.components) components.push_back(polyform_to_json(c));
  j["components"] = std::move(components);
  return j;
}

HodgeTuple hodge_tuple_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("a tuple must be an object");
  HodgeTuple tuple;
  tuple.m = int_field(j, "m");
  tuple.k = int_field(j, "k");
  if (!j.contains("range") || !j["range"].is_object()) throw ParseError("missing or invalid field \"range\"");
  tuple.range = GradeRange{int_field(j["range"], "r"), int_field(j["range"], "p"), int_field(j["range"], "q")};
  if (!j.contains("components") || !j["components"].is_array())
    throw ParseError("missing or invalid field \"components\"");
  for (const auto& c : j["components"]) tuple.components.push_back(polyform_from_json(c));
  return tuple;
}

Json label_to_json(const HodgeLabel& label) {
  Json j;
  j["weight"] = label.weight;
  j["epsilon"] = label.epsilon;
  return j;
}

Json split_to_json(const PhiSplit& split) {
  Json j;
  Json kernel = Json::array();
  for (const PolyForm& c : split.kernel_part) kernel.push_back(polyform_to_json(c));
  j["kernel_part"] = std::move(kernel);
  j["image_part"] = hodge_tuple_to_json(split.image_part);
  return j;
}

Json report_to_json(const Report& report) {
  Json config;
  config["suites"] = report.config.suites;
  config["m_max"] = optional_to_json(report.config.m_max);
  config["k_max"] = optional_to_json(report.config.k_max);
  config["seed"] = report.config.seed;
  config["cases"] = report.config.cases;
  config["dimension_cap"] = report.dimension_cap;

  Json summary;
  summary["total"] = static_cast<long>(report.results.size());
  summary["pass"] = report.pass_count();
  summary["fail"] = report.fail_count();
  summary["skip"] = report.skip_count();

  Json results = Json::array();
  for (const CheckResult& row : report.results) {
    Json r;
    r["check_id"] = row.check_id;
    r["m"] = optional_to_json(row.m);
    r["k"] = optional_to_json(row.k);
    r["s"] = optional_to_json(row.s);
    r["r"] = optional_to_json(row.r);
    r["p"] = optional_to_json(row.p);
    r["q"] = optional_to_json(row.q);
    r["j"] = optional_to_json(row.j);
    r["computed"] = value_to_json(row.computed);
    r["expected"] = value_to_json(row.expected);
    r["status"] = to_string(row.status);
    results.push_back(std::move(r));
  }

  Json j;
  j["config"] = std::move(config);
  j["summary"] = std::move(summary);
  j["results"] = std::move(results);
  return j;
}

std::string report_to_csv(const Report& report) {
  std::string out = "check_id,m,k,s,r,p,q,j,computed,expected,status\n";
  for (const CheckResult& row : report.results) {
    std::string line = row.check_id;
    append_csv_field(line, row.m);
    append_csv_field(line, row.k);
    append_csv_field(line, row.s);
    append_csv_field(line, row.r);
    append_csv_field(line, row.p);
    append_csv_field(line, row.q);
    append_csv_field(line, row.j);
    line += ',';
    line += row.computed.to_string();
    line += ',';
    line += row.expected.to_string();
    line += ',';
    line += to_string(row.status);
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace gmtforms
