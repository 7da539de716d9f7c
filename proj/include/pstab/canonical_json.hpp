#pragma once

#include <string>

#include <json.hpp>

namespace pstab {

// Deterministic JSON serialization: object keys sorted, doubles printed with
// %.17g (round-trip exact), negative zero normalized to 0, no whitespace.
// Non-finite numbers are rejected so every emitted document re-parses.
std::string canonical_json(const nlohmann::json& value);

// canonical_json plus a trailing newline, written as bytes.
void write_canonical_json(const nlohmann::json& value, const std::string& path);

nlohmann::json load_json(const std::string& path);

// FNV-1a 64 of the canonical form, as 16 lowercase hex digits.
std::string canonical_hash_hex(const nlohmann::json& value);

}  // namespace pstab
