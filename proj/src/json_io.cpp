#include "congrusep/json_io.hpp"

#include <fstream>
#include <sstream>

namespace congrusep::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t uint_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool bool_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) throw InputError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

mpq_class scalar(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(mpz_class(v.dump()));
  throw InputError("matrix entries must be strings or integers, got " + v.dump());
}

}  // namespace

json load_argument(const std::string& arg) {
  std::string text;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

json to_json(const IntegerMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) r.push_back(a(i, j).get_str());
    rows.push_back(std::move(r));
  }
  return {{"n", a.rows()}, {"entries", std::move(rows)}};
}

json to_json(const RationalMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) r.push_back(a(i, j).get_str());
    rows.push_back(std::move(r));
  }
  return {{"n", a.rows()}, {"entries", std::move(rows)}};
}

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json to_json(const ModMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.n(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < a.n(); ++j) r.push_back(a(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

RationalMatrix rational_matrix(const json& j) {
  const json* rows = &j;
  std::optional<std::uint64_t> n;
  if (j.is_object()) {
    rows = &field(j, "entries");
    n = uint_field(j, "n");
  }
  if (!rows->is_array() || rows->empty()) throw InputError("matrix must be a nonempty array of rows");
  const std::size_t r = rows->size();
  if (n && *n != r) throw DimensionError("declared n does not match the number of rows");
  RationalMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const json& row = (*rows)[i];
    if (!row.is_array() || row.size() != r) throw DimensionError("matrix must be square");
    for (std::size_t k = 0; k < r; ++k) a(i, k) = scalar(row[k]);
  }
  return a;
}

IntegerMatrix integer_matrix(const json& j) {
  const RationalMatrix a = rational_matrix(j);
  if (!is_integral(a)) throw InputError("expected an integer matrix");
  return to_integer(a);
}

std::vector<IntegerMatrix> integer_matrices(const json& j) {
  const json& list = j.is_object() ? field(j, "generators") : j;
  if (!list.is_array()) throw InputError("expected a list of matrices");
  std::vector<IntegerMatrix> out;
  for (const auto& m : list) out.push_back(integer_matrix(m));
  return out;
}

RationalVector rational_vector(const json& j) {
  if (!j.is_array()) throw InputError("expected a vector");
  RationalVector v;
  for (const auto& x : j) v.push_back(scalar(x));
  return v;
}

json to_json(const JordanPair& p) { return {{"semisimple", to_json(p.semisimple)}, {"unipotent", to_json(p.unipotent)}}; }

json group_dump(const ModMatrixGroup& g, bool full) {
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(to_json(x));
  json out{{"n", g.n()}, {"m", g.modulus()}, {"generators", gens}, {"size", g.size()}, {"elements_digest", g.digest()}};
  if (full) {
    json els = json::array();
    for (const auto& x : g.elements().sorted()) els.push_back(to_json(x));
    out["elements"] = std::move(els);
  }
  return out;
}

json class_dump(const ConjClass& c, bool full) {
  json out{{"n", c.orbit.n()},
           {"m", c.orbit.modulus()},
           {"representative", to_json(c.representative)},
           {"size", c.size()},
           {"elements_digest", c.digest()}};
  if (full) {
    json els = json::array();
    for (const auto& x : c.orbit.sorted()) els.push_back(to_json(x));
    out["elements"] = std::move(els);
  }
  return out;
}

json to_json(const SeparationCertificate& c) {
  json gens = json::array();
  for (const auto& g : c.gamma_gens) gens.push_back(to_json(g));
  return {{"version", 1},
          {"kind", "separation"},
          {"n", c.n},
          {"m", c.m},
          {"gamma_gens", gens},
          {"eta", to_json(c.eta)},
          {"image_size", c.image_size},
          {"class_size", c.class_size},
          {"image_digest", c.image_digest},
          {"class_digest", c.class_digest},
          {"disjoint", c.disjoint}};
}

json to_json(const TorsionFreeCertificate& c) {
  json gens = json::array();
  for (const auto& g : c.gamma_gens) gens.push_back(to_json(g));
  json reps = json::array();
  for (const auto& r : c.reps)
    reps.push_back({{"rep", to_json(r.rep)},
                    {"order", r.order},
                    {"class_size", r.class_size},
                    {"class_digest", r.class_digest},
                    {"disjoint", r.disjoint}});
  return {{"version", 1},
          {"kind", "torsion-free"},
          {"n", c.n},
          {"m", c.m},
          {"gamma_gens", gens},
          {"torsion_reps", reps},
          {"image_size", c.image_size},
          {"class_size", c.class_size},
          {"image_digest", c.image_digest},
          {"class_digest", c.class_digest},
          {"table_version", c.table_version},
          {"assumption", c.assumption}};
}

Certificate certificate(const json& j) {
  if (!j.is_object()) throw InputError("certificate must be a JSON object");
  if (uint_field(j, "version") != 1) throw InputError("unsupported certificate version");
  const std::string kind = string_field(j, "kind");
  const auto gens_json = field(j, "gamma_gens");
  if (!gens_json.is_array()) throw InputError("gamma_gens must be a list");
  if (kind == "separation") {
    SeparationCertificate c;
    c.n = uint_field(j, "n");
    c.m = uint_field(j, "m");
    c.gamma_gens = integer_matrices(gens_json);
    c.eta = integer_matrix(field(j, "eta"));
    c.image_size = uint_field(j, "image_size");
    c.class_size = uint_field(j, "class_size");
    c.image_digest = string_field(j, "image_digest");
    c.class_digest = string_field(j, "class_digest");
    c.disjoint = bool_field(j, "disjoint");
    return c;
  }
  if (kind == "torsion-free") {
    TorsionFreeCertificate c;
    c.n = uint_field(j, "n");
    c.m = uint_field(j, "m");
    c.gamma_gens = integer_matrices(gens_json);
    const json& reps = field(j, "torsion_reps");
    if (!reps.is_array()) throw InputError("torsion_reps must be a list");
    for (const auto& r : reps)
      c.reps.push_back({integer_matrix(field(r, "rep")), uint_field(r, "order"), uint_field(r, "class_size"),
                        string_field(r, "class_digest"), bool_field(r, "disjoint")});
    c.image_size = uint_field(j, "image_size");
    c.class_size = uint_field(j, "class_size");
    c.image_digest = string_field(j, "image_digest");
    c.class_digest = string_field(j, "class_digest");
    c.table_version = string_field(j, "table_version");
    c.assumption = string_field(j, "assumption");
    return c;
  }
  throw InputError("unknown certificate kind '" + kind + "'");
}

json to_json(const WitnessPrime& w) {
  return {{"factor", to_json(w.factor)}, {"p", w.p}, {"level", w.level}, {"reason", to_string(w.reason)}};
}

json to_json(const AffineElement& e) { return {{"t", to_json(e.t)}, {"S", to_json(e.S)["entries"]}}; }

AffineElement affine_element(const json& j, std::size_t m) {
  AffineElement e{rational_vector(field(j, "t")), integer_matrix(field(j, "S"))};
  if (e.t.size() != m || e.S.rows() != m) throw DimensionError("affine element does not match m");
  return e;
}

CrystGroup cryst_group(const json& j) {
  CrystGroup g;
  g.m = uint_field(j, "m");
  if (g.m == 0) throw InputError("m must be positive");
  if (j.contains("step")) g.step = uint_field(j, "step");
  if (j.contains("lattice")) {
    g.lattice = rational_matrix(j.at("lattice"));
    if (g.lattice.rows() != g.m) throw DimensionError("lattice must have m rows");
  } else {
    g.lattice = RationalMatrix::identity(g.m);
  }
  const json& gens = field(j, "generators");
  if (!gens.is_array()) throw InputError("generators must be a list");
  for (const auto& e : gens) g.gens.push_back(affine_element(e, g.m));
  return g;
}

json to_json(const SemiFactorSet& s) {
  json comps = json::array();
  for (const auto& c : s.components) {
    json inv = json::array();
    for (const auto& d : c.invariant_factors) inv.push_back(d.get_str());
    json reps = json::array();
    for (const auto& r : c.reps) reps.push_back({{"t_s", to_json(r.t_s)}, {"witness", to_json(r.witness)}});
    comps.push_back({{"S", to_json(c.S)["entries"]},
                     {"invariant_factors", inv},
                     {"quotient_order", c.quotient_order.get_str()},
                     {"representatives", reps}});
  }
  json basis = json::array();
  for (std::size_t j = 0; j < s.frame.m; ++j) {
    RationalVector col(s.frame.m);
    for (std::size_t i = 0; i < s.frame.m; ++i) col[i] = s.frame.basis(i, j);
    basis.push_back(to_json(col));
  }
  return {{"m", s.frame.m},
          {"translation_lattice", basis},
          {"holonomy_order", s.components.size()},
          {"components", comps},
          {"total", s.total()}};
}

}  // namespace congrusep::json_io
