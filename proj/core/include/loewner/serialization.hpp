#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "loewner/fields.hpp"
#include "loewner/geometry.hpp"
#include "loewner/types.hpp"

namespace loewner::io {

using Json = nlohmann::json;

/// Version stamped into every report document.
inline constexpr int kSchemaVersion = 1;

/// Complex numbers are [re, im]; vectors are arrays of those; matrices arrays of rows.
Json to_json(Complex c);
Json to_json(const ComplexVector& v);
Json to_json(const ComplexMatrix& m);
Json to_json(const DomainSpec& domain);
/// Built-in kinds only; Custom fields throw InvalidArgument.
Json to_json(const HerglotzFieldSpec& spec);

/// Parsers throw SchemaError whose path() names the offending member.
Complex complex_from_json(const Json& j, const std::string& path);
ComplexVector vector_from_json(const Json& j, const std::string& path);
ComplexMatrix matrix_from_json(const Json& j, const std::string& path);
DomainSpec domain_from_json(const Json& j, const std::string& path);
HerglotzFieldSpec field_from_json(const Json& j, const std::string& path = "");

double number_from_json(const Json& j, const std::string& path);
std::string join_path(const std::string& base, const std::string& member);
std::string index_path(const std::string& base, std::size_t index);

}  // namespace loewner::io
