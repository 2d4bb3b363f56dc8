#pragma once

// JSON forms. Matrix entries are decimal strings ("-3", "1/2"); plain JSON
// integers are accepted on input, floats never.

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

#include "congrusep/cryst.hpp"
#include "congrusep/exactlin.hpp"
#include "congrusep/jordan.hpp"
#include "congrusep/modgrp.hpp"
#include "congrusep/separate.hpp"

namespace congrusep::json_io {

using nlohmann::json;

/// Inline JSON when the argument starts with '{' or '[', otherwise a file
/// path. Throws InputError on unreadable files and parse errors.
json load_argument(const std::string& arg);

json to_json(const IntegerMatrix& a);
json to_json(const RationalMatrix& a);
json to_json(const RationalVector& v);
json to_json(const ModMatrix& a);

/// Accepts {"n": k, "entries": [[...]]} or a bare nested array.
RationalMatrix rational_matrix(const json& j);
/// As above; InputError when an entry is not an integer.
IntegerMatrix integer_matrix(const json& j);
/// A list of matrices, or {"generators": [...]}.
std::vector<IntegerMatrix> integer_matrices(const json& j);
RationalVector rational_vector(const json& j);

json to_json(const JordanPair& p);

/// {"n","m","generators","size","elements_digest"}; `full` adds "elements".
json group_dump(const ModMatrixGroup& g, bool full);
json class_dump(const ConjClass& c, bool full);

json to_json(const SeparationCertificate& c);
json to_json(const TorsionFreeCertificate& c);
using Certificate = std::variant<SeparationCertificate, TorsionFreeCertificate>;
/// Strict parse: unknown kind, wrong version or a missing field is an
/// InputError.
Certificate certificate(const json& j);

json to_json(const WitnessPrime& w);

json to_json(const AffineElement& e);
AffineElement affine_element(const json& j, std::size_t m);
/// {"m", "lattice" (optional, default Z^m), "generators": [{"t","S"}], "step" (optional)}.
CrystGroup cryst_group(const json& j);
json to_json(const SemiFactorSet& s);

}  // namespace congrusep::json_io
