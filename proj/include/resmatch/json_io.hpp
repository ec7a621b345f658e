#pragma once

#include <string>

#include "resmatch/model.hpp"

namespace resmatch {

/// Parses and validates an instance document:
///   {"patients": ["i1", ...],
///    "categories": [{"id": "c1", "reserve": 1, "priority": ["i1", "__BETA__", ...]}, ...]}
/// Malformed JSON or wrong shapes raise PARSE_ERROR with position info;
/// model violations surface as the validate_instance errors.
Instance parse_instance(const std::string& text);

/// Canonical form: keys sorted, two-space indent, trailing newline.
/// serialize_instance(parse_instance(x)) is idempotent.
std::string serialize_instance(const Instance& instance);

/// Matching document: {"assignments": {"i1": "c2", ...}}; omitted patients
/// are unmatched.
Matching parse_matching(const Instance& instance, const std::string& text);
std::string serialize_matching(const Instance& instance, const Matching& mu);

}  // namespace resmatch
