#pragma once

#include <filesystem>

#include <json.hpp>

#include "descentkit/modules.hpp"

namespace descentkit {

using Json = nlohmann::json;

// All field elements travel as decimal strings ("3", "-2/7"); plain JSON
// integers are also accepted on input.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(FieldDescriptor f, const Json& j);

Json field_to_json(const FieldDescriptor& f);
FieldDescriptor field_from_json(const Json& j);

Json algebra_to_json(const Algebra& a);
AlgebraPtr algebra_from_json(const Json& j);

// An algebra reference is either an inline object or a path string resolved
// relative to the referencing file's directory.
AlgebraPtr resolve_algebra(const Json& ref, const std::filesystem::path& base);

Json module_to_json(const Module& m, const std::optional<std::string>& algebra_ref = std::nullopt);
Module module_from_json(const Json& j, const std::filesystem::path& base);

Json map_to_json(const AlgebraMap& f, const std::optional<std::string>& source_ref = std::nullopt,
                 const std::optional<std::string>& target_ref = std::nullopt);
AlgebraMap map_from_json(const Json& j, const std::filesystem::path& base);

AlgebraPtr load_algebra(const std::string& path);
Module load_module(const std::string& path);
AlgebraMap load_map(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
void save_json(const Json& j, const std::string& path);
Json parse_json_text(const std::string& text);

// FNV-1a 64-bit, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);
std::string file_digest(const std::string& path);

enum class JsonKind { algebra, module, map };

// "mul" marks an algebra, "action" a module, "matrix" a map.
JsonKind sniff_kind(const Json& j);

}  // namespace descentkit
