#include "bfred/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bfred/errors.hpp"

namespace bfred::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail("malformed_document", where + ": " + what);
}

std::string item(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

std::string field(const std::string& where, const std::string& key) {
  return where + "." + key;
}

const Json& member(const Json& j, const std::string& where, const std::string& key) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing required key '" + key + "'");
  return *it;
}

std::string string_member(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

long int_member(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

Rational rational_from_json(const Json& j, const std::string& where) {
  try {
    return parse_rational(string_member(j, where));
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

long degree_from_key(const std::string& key, const std::string& where) {
  long deg = 0;
  const char* first = key.data();
  const char* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, deg);
  if (ec != std::errc() || ptr != last)
    bad(where, "degree key '" + key + "' is not a decimal integer");
  return deg;
}

std::string vertex_name(const Json& j, const std::string& where) {
  std::string v = string_member(j, where);
  if (v.empty()) bad(where, "empty vertex identifier");
  if (v.find('|') != std::string::npos)
    bad(where, "vertex identifier '" + v + "' contains '|'");
  return v;
}

/* Parsers call the structural validators so no malformed value escapes;
 * validator failures are reported as document errors with the original
 * diagnostic preserved. */
template <typename F>
void validated(const std::string& where, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

Json rational_json(const Rational& r) { return Json(format_rational(r)); }

}  // namespace

Json to_json(const GaussianRational& v) {
  if (v.im() == 0) return rational_json(v.re());
  Json j = Json::object();
  j["re"] = format_rational(v.re());
  j["im"] = format_rational(v.im());
  return j;
}

GaussianRational gaussian_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return GaussianRational(rational_from_json(j, where));
  if (!j.is_object()) bad(where, "expected \"p/q\" or {\"re\", \"im\"}");
  Rational re = 0, im = 0;
  for (const auto& [key, value] : j.items()) {
    if (key == "re")
      re = rational_from_json(value, field(where, key));
    else if (key == "im")
      im = rational_from_json(value, field(where, key));
    else
      bad(where, "unexpected key '" + key + "' in a Gaussian rational");
  }
  return GaussianRational(re, im);
}

Json to_json(const LaurentPoly& f) {
  Json j = Json::object();
  for (const auto& [deg, coeff] : f.terms()) j[std::to_string(deg)] = to_json(coeff);
  return j;
}

LaurentPoly laurent_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object mapping degrees to coefficients");
  LaurentPoly f;
  for (const auto& [key, value] : j.items()) {
    long deg = degree_from_key(key, where);
    f.set(deg, gaussian_from_json(value, field(where, key)));
  }
  return f;
}

Json to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of rows");
  const long rows = static_cast<long>(j.size());
  long cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) bad(item(where, 0), "expected an array");
    cols = static_cast<long>(j[0].size());
  }
  if (rows > limits().max_finite || cols > limits().max_finite)
    bad(where, "matrix exceeds the model size limit");
  ExactMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      bad(item(where, static_cast<std::size_t>(r)), "ragged matrix row");
    for (long c = 0; c < cols; ++c)
      m(r, c) = gaussian_from_json(row[static_cast<std::size_t>(c)],
                                   item(item(where, static_cast<std::size_t>(r)),
                                        static_cast<std::size_t>(c)));
  }
  return m;
}

Json to_json(const BlockOperator& op) {
  Json blocks = Json::array();
  for (const Block& b : op.blocks) {
    Json j = Json::object();
    if (const auto* fin = std::get_if<FiniteBlock>(&b)) {
      j["type"] = "finite";
      j["matrix"] = to_json(fin->matrix);
    } else {
      const auto& toe = std::get<ToeplitzBlock>(b);
      j["type"] = "toeplitz";
      j["symbol"] = to_json(toe.symbol);
      if (toe.patch) j["patch"] = to_json(*toe.patch);
    }
    blocks.push_back(std::move(j));
  }
  Json out = Json::object();
  out["blocks"] = std::move(blocks);
  return out;
}

BlockOperator operator_from_json(const Json& j, const std::string& where) {
  const Json& blocks = member(j, where, "blocks");
  if (!blocks.is_array()) bad(field(where, "blocks"), "expected an array");
  BlockOperator op;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Json& jb = blocks[i];
    const std::string here = item(field(where, "blocks"), i);
    std::string type = string_member(member(jb, here, "type"), field(here, "type"));
    if (type == "finite") {
      FiniteBlock fin;
      fin.matrix = matrix_from_json(member(jb, here, "matrix"), field(here, "matrix"));
      op.blocks.emplace_back(std::move(fin));
    } else if (type == "toeplitz") {
      ToeplitzBlock toe;
      toe.symbol = laurent_from_json(member(jb, here, "symbol"), field(here, "symbol"));
      if (jb.contains("patch"))
        toe.patch = matrix_from_json(jb.at("patch"), field(here, "patch"));
      op.blocks.emplace_back(std::move(toe));
    } else {
      bad(field(here, "type"), "unknown block type '" + type + "'");
    }
  }
  validated(where, [&] { validate_operator(op); });
  return op;
}

ParamComplex complex_from_json(const Json& j) {
  ParamComplex c;
  const Json& vertices = member(j, "document", "vertices");
  if (!vertices.is_array()) bad("vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    c.vertices.push_back(vertex_name(vertices[i], item("vertices", i)));
  const Json& edges = member(j, "document", "edges");
  if (!edges.is_array()) bad("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 2) bad(item("edges", i), "expected a two-element array");
    c.edges.emplace_back(vertex_name(e[0], item(item("edges", i), 0)),
                         vertex_name(e[1], item(item("edges", i), 1)));
  }
  return c;
}

namespace {

/* Shared by block-operator and normal-diagonal families: the complex plus
 * an "operators" object covering the vertex set exactly. */
template <typename Op, typename Parse>
void assignment_from_json(const Json& j, const ParamComplex& c,
                          std::map<std::string, Op>& out, Parse&& parse) {
  const Json& ops = member(j, "document", "operators");
  if (!ops.is_object()) bad("operators", "expected an object keyed by vertex");
  std::set<std::string> declared(c.vertices.begin(), c.vertices.end());
  for (const auto& [v, op] : ops.items()) {
    if (!declared.count(v)) bad("operators", "operator for undeclared vertex '" + v + "'");
    out[v] = parse(op, field("operators", v));
  }
  for (const std::string& v : c.vertices)
    if (!out.count(v)) bad("operators", "no operator for vertex '" + v + "'");
}

void edge_bounds_from_json(const Json& j, OperatorFamily& f) {
  if (!j.contains("edge_bounds")) return;
  const Json& bounds = j.at("edge_bounds");
  if (!bounds.is_object()) bad("edge_bounds", "expected an object keyed \"a|b\"");
  for (const auto& [key, value] : bounds.items()) {
    std::size_t bar = key.find('|');
    if (bar == std::string::npos || bar == 0 || bar + 1 == key.size())
      bad("edge_bounds", "key '" + key + "' is not of the form \"a|b\"");
    std::string a = key.substr(0, bar), b = key.substr(bar + 1);
    Rational bound = rational_from_json(value, field("edge_bounds", key));
    f.edge_bounds[a < b ? std::make_pair(a, b) : std::make_pair(b, a)] = bound;
  }
}

}  // namespace

Json to_json(const OperatorFamily& f) {
  ParamComplex n = normalized_complex(f.complex);
  Json out = Json::object();
  out["vertices"] = n.vertices;
  Json edges = Json::array();
  for (const auto& [a, b] : n.edges) edges.push_back(Json::array({a, b}));
  out["edges"] = std::move(edges);
  Json ops = Json::object();
  for (const auto& [v, op] : f.assignment) ops[v] = to_json(op);
  out["operators"] = std::move(ops);
  if (!f.edge_bounds.empty()) {
    Json bounds = Json::object();
    for (const auto& [edge, bound] : f.edge_bounds)
      bounds[edge.first + "|" + edge.second] = rational_json(bound);
    out["edge_bounds"] = std::move(bounds);
  }
  return out;
}

OperatorFamily family_from_json(const Json& j) {
  OperatorFamily f;
  f.complex = complex_from_json(j);
  assignment_from_json(j, f.complex, f.assignment,
                       [](const Json& op, const std::string& where) {
                         return operator_from_json(op, where);
                       });
  edge_bounds_from_json(j, f);
  validated("document", [&] { validate_family(f); });
  return f;
}

Json to_json(const NormalDiagonalOperator& op) {
  Json out = Json::object();
  Json exceptional = Json::array();
  for (const auto& [value, mult] : op.exceptional) {
    Json e = Json::object();
    e["value"] = to_json(value);
    e["mult"] = mult;
    exceptional.push_back(std::move(e));
  }
  out["exceptional"] = std::move(exceptional);
  Json tails = Json::array();
  for (const GaussianRational& t : op.tails) tails.push_back(to_json(t));
  out["tails"] = std::move(tails);
  return out;
}

NormalDiagonalOperator normal_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  NormalDiagonalOperator op;
  if (j.contains("exceptional")) {
    const Json& exceptional = j.at("exceptional");
    const std::string here = field(where, "exceptional");
    if (!exceptional.is_array()) bad(here, "expected an array");
    for (std::size_t i = 0; i < exceptional.size(); ++i) {
      const Json& e = exceptional[i];
      GaussianRational value =
          gaussian_from_json(member(e, item(here, i), "value"), field(item(here, i), "value"));
      long mult = int_member(member(e, item(here, i), "mult"), field(item(here, i), "mult"));
      if (mult < 1) bad(field(item(here, i), "mult"), "multiplicity must be positive");
      if (!op.exceptional.emplace(value, mult).second)
        bad(item(here, i), "duplicate exceptional value");
    }
  }
  const Json& tails = member(j, where, "tails");
  const std::string here = field(where, "tails");
  if (!tails.is_array()) bad(here, "expected an array");
  for (std::size_t i = 0; i < tails.size(); ++i) {
    if (!op.tails.insert(gaussian_from_json(tails[i], item(here, i))).second)
      bad(item(here, i), "duplicate tail value");
  }
  validated(where, [&] { validate_normal(op); });
  return op;
}

Json to_json(const NormalFamily& f) {
  ParamComplex n = normalized_complex(f.complex);
  Json out = Json::object();
  out["vertices"] = n.vertices;
  Json edges = Json::array();
  for (const auto& [a, b] : n.edges) edges.push_back(Json::array({a, b}));
  out["edges"] = std::move(edges);
  Json ops = Json::object();
  for (const auto& [v, op] : f.assignment) ops[v] = to_json(op);
  out["operators"] = std::move(ops);
  return out;
}

NormalFamily normal_family_from_json(const Json& j) {
  NormalFamily f;
  f.complex = complex_from_json(j);
  assignment_from_json(j, f.complex, f.assignment,
                       [](const Json& op, const std::string& where) {
                         return normal_from_json(op, where);
                       });
  validated("document", [&] { validate_normal_family(f); });
  return f;
}

Json to_json(const OperatorPath& p) {
  Json out = Json::object();
  Json grid = Json::array();
  for (const Rational& t : p.grid) grid.push_back(rational_json(t));
  out["grid"] = std::move(grid);
  Json samples = Json::array();
  for (const BlockOperator& op : p.samples) samples.push_back(to_json(op));
  out["samples"] = std::move(samples);
  return out;
}

OperatorPath path_from_json(const Json& j) {
  OperatorPath p;
  const Json& grid = member(j, "document", "grid");
  if (!grid.is_array()) bad("grid", "expected an array");
  for (std::size_t i = 0; i < grid.size(); ++i)
    p.grid.push_back(rational_from_json(grid[i], item("grid", i)));
  const Json& samples = member(j, "document", "samples");
  if (!samples.is_array()) bad("samples", "expected an array");
  for (std::size_t i = 0; i < samples.size(); ++i)
    p.samples.push_back(operator_from_json(samples[i], item("samples", i)));
  validated("document", [&] { validate_path(p); });
  return p;
}

bool describes_normal_family(const Json& j) {
  if (!j.is_object() || !j.contains("operators") || !j.at("operators").is_object())
    return false;
  for (const auto& [v, op] : j.at("operators").items())
    return op.is_object() && op.contains("tails");
  return false;
}

bool describes_family(const Json& j) {
  return j.is_object() && j.contains("vertices") && j.contains("operators");
}

Json to_json(const FredholmVerdict& v) {
  Json out = Json::object();
  out["fredholm"] = v.is_fredholm;
  out["reason"] = to_string(v.reason);
  if (v.index) out["index"] = *v.index;
  if (!v.is_fredholm) out["offending_block"] = v.offending_block;
  return out;
}

Json to_json(const NullityDefect& nd) {
  auto one = [](const CountEstimate& e) {
    Json j = Json::object();
    j["value"] = e.value;
    j["certified"] = e.certified;
    return j;
  };
  Json out = Json::object();
  out["nullity"] = one(nd.nullity);
  out["defect"] = one(nd.defect);
  return out;
}

Json to_json(const BFredholmVerdict& v) {
  Json out = Json::object();
  out["status"] = v.status == BStatus::bfredholm ? "bfredholm" : "indeterminate";
  if (v.status == BStatus::bfredholm) {
    out["index"] = *v.index;
    out["dis"] = v.dis_value ? Json(*v.dis_value) : Json("unknown");
    if (v.witness_n) out["witness_n"] = *v.witness_n;
  }
  return out;
}

Json to_json(const SpectralIndices& s) {
  Json out = Json::object();
  out["ascent"] = s.ascent;
  out["descent"] = s.descent;
  out["pole"] = s.pole;
  out["multiplicity"] = s.multiplicity;
  return out;
}

Json to_json(const StabilizationReport& r) {
  Json out = Json::object();
  out["d"] = r.d;
  out["pass"] = r.pass;
  Json classes = Json::array();
  for (const DimCodimClass& c : r.classes) {
    Json j = Json::object();
    j["dim"] = c.dim;
    j["codim"] = c.codim;
    j["psi"] = psi(c);
    classes.push_back(std::move(j));
  }
  out["classes"] = std::move(classes);
  return out;
}

Json index_vector_to_json(const IndexVector& u, const ParamComplex& c) {
  Json components = Json::array();
  for (const auto& [rep, members] : connected_components(c)) {
    Json j = Json::object();
    j["rep"] = rep;
    j["members"] = members;
    j["index"] = u.entries.at(rep);
    components.push_back(std::move(j));
  }
  Json out = Json::object();
  out["components"] = std::move(components);
  return out;
}

namespace {

Json point_set_to_json(const std::set<GaussianRational>& points) {
  Json out = Json::array();
  for (const GaussianRational& p : points) out.push_back(to_json(p));
  return out;
}

}  // namespace

Json to_json(const SpectralReport& r) {
  Json out = Json::object();
  out["spectrum"] = point_set_to_json(r.spectrum);
  out["weyl_spectrum"] = point_set_to_json(r.weyl_spectrum);
  out["e0"] = point_set_to_json(r.e0);
  out["pi0"] = point_set_to_json(r.pi0);
  return out;
}

Json to_json(const WeylBrowderVerdict& v) {
  Json out = Json::object();
  out["weyl"] = v.weyl_holds;
  out["browder"] = v.browder_holds;
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

Json to_json(const PathReport& r) {
  Json out = Json::object();
  out["all_fredholm"] = r.all_fredholm;
  out["all_bfredholm"] = r.all_bfredholm;
  Json profile = Json::array();
  for (const PathPoint& p : r.profile) {
    Json j = Json::object();
    j["t"] = rational_json(p.t);
    j["status"] = to_string(p.status);
    j["index"] = p.index ? Json(*p.index) : Json(nullptr);
    profile.push_back(std::move(j));
  }
  out["profile"] = std::move(profile);
  return out;
}

Json to_json(const HomotopyReport& r, const ParamComplex& base) {
  Json out = Json::object();
  out["layers"] = r.layers;
  Json per_layer = Json::array();
  for (const IndexVector& u : r.per_layer) per_layer.push_back(index_vector_to_json(u, base));
  out["per_layer"] = std::move(per_layer);
  out["constant"] = true;  // homotopy_check throws otherwise
  return out;
}

Json to_json(const LocalConstancyReport& r) {
  Json out = Json::object();
  out["margin"] = rational_json(r.margin);
  out["trials"] = r.trials;
  out["failures"] = r.failures;
  return out;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("malformed_document", e.what());
  }
}

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io_error", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) fail("io_error", "cannot read '" + path + "'");
  return buf.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bfred::io
