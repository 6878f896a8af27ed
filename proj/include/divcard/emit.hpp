#pragma once

#include <string>
#include <string_view>

#include "divcard/model.hpp"

namespace divcard {

inline constexpr const char* EMIT_UNRESOLVED = "EMIT_UNRESOLVED";
inline constexpr const char* JSON_SCHEMA_MISMATCH = "JSON_SCHEMA_MISMATCH";
inline constexpr const char* kJsonSchemaVersion = "1.0";

// Deterministic, lossless JSON export (schemaVersion 1.0, two-space indent,
// schema-ordered keys, ISO dates, canonical ISO codes with display names,
// trailing newline). The card must validate with zero errors; EMIT_UNRESOLVED
// otherwise.
Result<std::string> emitJson(const Card& card);

// Inverse of emitJson for schemaVersion 1.0 documents. Reports
// JSON_SCHEMA_MISMATCH with the path of the offending node.
Result<Card> importJson(std::string_view json);

// Deterministic Markdown export: H1 title, one H2 per card part, H3 per
// element, field tables with "not reported" for absent optionals. Same
// validity requirement as emitJson.
Result<std::string> emitMarkdown(const Card& card);

} // namespace divcard
