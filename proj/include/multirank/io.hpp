#pragma once

#include "multirank/polynomial.hpp"
#include "multirank/ranks.hpp"
#include "multirank/tensor.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>

namespace multirank {

using Json = nlohmann::ordered_json;

using AnyTensor = std::variant<MultilinearForm, IntMultilinearForm>;
using AnyPoly = std::variant<HomogeneousForm, IntHomogeneousForm>;

/// {"p", "e", "modulus"}; the modulus is always echoed.
Json field_to_json(const FieldSpec& spec);
/// Accepts an omitted modulus; a given one must be the canonical modulus.
FieldPtr parse_field(const Json& j);

/// Tensor file: {"field": {...} | "Z", "d", "n", "entries": [{"idx", "val"}]}.
/// Field values are digit lists (constant digit first) or integers, reduced
/// into the prime field; integer tensors take decimal strings or integers.
/// Zero entries are dropped, equal duplicates merged, conflicting ones rejected.
AnyTensor parse_tensor(const Json& j);
AnyTensor parse_tensor_file(const std::filesystem::path& path);

Json tensor_to_json(const MultilinearForm& f);
Json tensor_to_json(const IntMultilinearForm& f);
Json tensor_to_json(const AnyTensor& f);

/// Polynomial file: {"field", "n", "d", "monomials": [{"exp", "val"}]}.
AnyPoly parse_poly(const Json& j);
AnyPoly parse_poly_file(const std::filesystem::path& path);

Json poly_to_json(const HomogeneousForm& f);
Json poly_to_json(const IntHomogeneousForm& f);

/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

Json to_json(const ExactLogRank& r);
Json to_json(const LevelEstimate& e);
Json to_json(const PrkResult& r, const FieldPtr& field, unsigned d, unsigned n);
Json to_json(const StrResult& r);
Json to_json(const HeightRankEstimate& e);

}  // namespace multirank
