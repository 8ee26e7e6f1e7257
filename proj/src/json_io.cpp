#include "k3lat/json_io.hpp"

#include "k3lat/errors.hpp"

#include <fstream>

namespace k3lat {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

}  // namespace

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (den(r) != 1) bad("expected an integer, got " + j.get<std::string>());
    return num(r);
  }
  bad("expected an integer");
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected an integer or a rational string");
}

Json integer_to_json(const Integer& x) {
  if (fits_int64(x)) return Json(x.convert_to<std::int64_t>());
  return Json(to_string(x));
}

Json rational_to_json(const Rational& x) { return Json(to_string(x)); }

RatVector rat_vector_from_json(const Json& j) {
  array(j, "vector");
  RatVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rational_from_json(j[i]);
  return v;
}

RatMatrix rat_matrix_from_json(const Json& j) {
  array(j, "matrix");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(array(j[0], "matrix row").size());
  RatMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = array(j[static_cast<std::size_t>(r)], "matrix row");
    if (static_cast<Index>(row.size()) != cols) bad("matrix rows have different lengths");
    for (Index c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

IntMatrix int_matrix_from_json(const Json& j) {
  const RatMatrix m = rat_matrix_from_json(j);
  IntMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      if (den(m(r, c)) != 1) bad("expected an integer matrix");
      out(r, c) = num(m(r, c));
    }
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rational_to_json(v(i)));
  return out;
}

Lattice lattice_from_json(const Json& j) {
  std::string name;
  if (j.is_object() && j.contains("name")) {
    if (!j["name"].is_string()) bad("\"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  return Lattice(int_matrix_from_json(field(j, "gram")), name);
}

Json lattice_to_json(const Lattice& L) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  if (!L.name().empty()) out["name"] = L.name();
  out["gram"] = to_json(L.gram());
  return out;
}

FieldPtr field_from_json(const Json& j) {
  const Json& poly = array(field(j, "poly"), "\"poly\"");
  std::vector<Integer> coeffs;
  for (const Json& c : poly) coeffs.push_back(integer_from_json(c));
  RatMatrix basis;
  if (j.contains("integral_basis")) basis = rat_matrix_from_json(j["integral_basis"]);
  return make_field(std::move(coeffs), std::move(basis));
}

Json field_to_json(const TotallyRealField& F) {
  Json out;
  Json poly = Json::array();
  for (const Integer& c : F.polynomial()) poly.push_back(integer_to_json(c));
  out["poly"] = std::move(poly);
  out["integral_basis"] = to_json(F.integral_basis());
  return out;
}

FieldElement field_element_from_json(const FieldPtr& F, const Json& j) {
  const RatVector c = rat_vector_from_json(j);
  if (c.size() != F->degree()) bad("field element needs " + std::to_string(F->degree()) + " coordinates");
  return FieldElement::from_integral(F, c);
}

Json field_element_to_json(const TotallyRealField& F, const FieldElement& x) {
  return to_json(F.to_integral(x.coordinates(F.degree())));
}

NumberFieldLattice nf_lattice_from_json(const Json& j) {
  const FieldPtr F = field_from_json(field(j, "field"));
  const Json& g = array(field(j, "gram"), "\"gram\"");
  const Index r = static_cast<Index>(g.size());
  FieldMatrix gram(r, r);
  for (Index i = 0; i < r; ++i) {
    const Json& row = array(g[static_cast<std::size_t>(i)], "gram row");
    if (static_cast<Index>(row.size()) != r) bad("O_F Gram matrix must be square");
    for (Index k = 0; k < r; ++k) gram(i, k) = field_element_from_json(F, row[static_cast<std::size_t>(k)]);
  }
  return make_nf_lattice(F, std::move(gram));
}

Json nf_lattice_to_json(const NumberFieldLattice& M) {
  Json out;
  out["field"] = field_to_json(*M.field);
  Json g = Json::array();
  for (Index i = 0; i < M.rank(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < M.rank(); ++k) row.push_back(field_element_to_json(*M.field, M.gram(i, k)));
    g.push_back(std::move(row));
  }
  out["gram"] = std::move(g);
  return out;
}

NumberFieldLattice quaternion_from_json(const Json& j) {
  const FieldPtr F = field_from_json(field(j, "field"));
  const FieldElement a = field_element_from_json(F, field(j, "a"));
  const FieldElement b = field_element_from_json(F, field(j, "b"));
  const Json& order = array(field(j, "order"), "\"order\"");
  if (order.size() != 4) bad("\"order\" needs four quaternions");
  std::array<Quaternion, 4> basis;
  for (std::size_t s = 0; s < 4; ++s) {
    const Json& q = array(order[s], "quaternion");
    if (q.size() != 4) bad("a quaternion has four components");
    for (std::size_t c = 0; c < 4; ++c) basis[s][c] = field_element_from_json(F, q[c]);
  }
  return quaternion_trace_zero(F, a, b, basis);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

Lattice load_lattice(const std::string& spec) {
  if (auto L = builtin_lattice(spec)) return *L;
  return lattice_from_json(read_json_file(spec));
}

}  // namespace k3lat
