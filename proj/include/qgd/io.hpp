#pragma once

#include "qgd/double_algebra.hpp"

#include <string>

#include "json.hpp"

namespace qgd::io {

using nlohmann::json;

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json sparse_to_json(const SparseVec& v);
SparseVec sparse_from_json(const json& j);

json map_to_json(const LinearMap& m);
LinearMap map_from_json(const json& j);

// Groupoid spec files: either explicit tables or constructor forms
// ({"type":"cyclic"|"group"|"s3"|"pair"|"disjoint_union"|"product", ...}).
FiniteGroupoid groupoid_from_json(const json& j);

json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const json& j);

json weakhopf_to_json(const WeakHopf& w);
WeakHopf weakhopf_from_json(const json& j);

json pairing_to_json(const WmhaPairing& p);
WmhaPairing pairing_from_json(const json& j, const std::string& base_dir);

json double_to_json(const DoubleAlgebra& d);
DoubleAlgebra double_from_json(const json& j, const std::string& base_dir);

json load_file(const std::string& path);          // throws std::runtime_error
std::string file_digest(const std::string& path); // sha256 of the bytes

} // namespace qgd::io
