#pragma once

// JSON forms of lattices, fields and O_F-lattices.
//
// Integers are accepted as JSON numbers or decimal strings, rationals as
// strings "a/b" or integers. On output, integers that fit in 64 bits are
// numbers and everything else is a string.

#include "k3lat/lattice.hpp"
#include "k3lat/transfer.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace k3lat {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Unreadable or unwritable file.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
Json integer_to_json(const Integer& x);
Json rational_to_json(const Rational& x);

RatVector rat_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
RatMatrix rat_matrix_from_json(const Json& j);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const RatVector& v);

/// {"name": string?, "gram": [[int, ...], ...]}; unknown keys are ignored.
Lattice lattice_from_json(const Json& j);
Json lattice_to_json(const Lattice& L);

/// {"poly": [c0, ..., cd], "integral_basis": [[...], ...]?}
FieldPtr field_from_json(const Json& j);
Json field_to_json(const TotallyRealField& F);

/// Field element given by coordinates against the integral basis.
FieldElement field_element_from_json(const FieldPtr& F, const Json& j);
Json field_element_to_json(const TotallyRealField& F, const FieldElement& x);

/// {"field": {...}, "gram": [[[coords], ...], ...]}
NumberFieldLattice nf_lattice_from_json(const Json& j);
Json nf_lattice_to_json(const NumberFieldLattice& M);

/// {"field": {...}, "a": [coords], "b": [coords], "order": [[q0, q1, q2, q3] x 4]}
/// where each q is the coordinate vector of a field element.
NumberFieldLattice quaternion_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// A built-in name ("E8", ...) or a path to a lattice JSON file.
Lattice load_lattice(const std::string& spec);

}  // namespace k3lat
