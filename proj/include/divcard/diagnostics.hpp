#pragma once

#include <span>
#include <string>
#include <string_view>

namespace divcard {

enum class Severity { error, warning };

// Half-open in spirit but stored as inclusive 1-based positions; 0 means
// "no source location" (programmatically built values).
struct SourceSpan {
    std::string file;
    int startLine = 0;
    int startCol = 0;
    int endLine = 0;
    int endCol = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    SourceSpan span;
};

struct DiagnosticInfo {
    const char* code;
    Severity severity;
    const char* messageTemplate;
};

// Stable code registry. Every diagnostic produced by the parser or the
// validator uses one of these codes; docs/diagnostics.md mirrors this table.
std::span<const DiagnosticInfo> diagnosticRegistry();
const DiagnosticInfo* findDiagnostic(std::string_view code);

namespace diag {
// Parser errors.
inline constexpr const char* SYN_EXPECTED_DECL = "SYN_EXPECTED_DECL";
inline constexpr const char* SYN_EXPECTED_COLON = "SYN_EXPECTED_COLON";
inline constexpr const char* SYN_MISSING_VALUE = "SYN_MISSING_VALUE";
inline constexpr const char* SYN_BAD_VALUE = "SYN_BAD_VALUE";
inline constexpr const char* SYN_BAD_DATE = "SYN_BAD_DATE";
inline constexpr const char* SYN_BAD_ENUM = "SYN_BAD_ENUM";
inline constexpr const char* SYN_EXPECTED_RPAREN = "SYN_EXPECTED_RPAREN";
inline constexpr const char* SYN_UNEXPECTED_CHAR = "SYN_UNEXPECTED_CHAR";
// Parser warnings.
inline constexpr const char* SYN_UNKNOWN_FIELD = "SYN_UNKNOWN_FIELD";
inline constexpr const char* SYN_DUPLICATE_FIELD = "SYN_DUPLICATE_FIELD";
inline constexpr const char* SYN_UNTERMINATED_STRING = "SYN_UNTERMINATED_STRING";
inline constexpr const char* SYN_UNCLOSED_ARRAY = "SYN_UNCLOSED_ARRAY";
// Validator errors.
inline constexpr const char* UNRESOLVED_REF = "UNRESOLVED_REF";
inline constexpr const char* DUPLICATE_ID = "DUPLICATE_ID";
inline constexpr const char* UNKNOWN_COUNTRY = "UNKNOWN_COUNTRY";
inline constexpr const char* UNKNOWN_LANGUAGE = "UNKNOWN_LANGUAGE";
inline constexpr const char* RANGE_INVERTED = "RANGE_INVERTED";
inline constexpr const char* BAD_MEMBERSHIP_DATES = "BAD_MEMBERSHIP_DATES";
inline constexpr const char* TEAMSIZE_LT_MEMBERS = "TEAMSIZE_LT_MEMBERS";
inline constexpr const char* NEGATIVE_TENURE = "NEGATIVE_TENURE";
inline constexpr const char* KIND_DETAIL_MISMATCH = "KIND_DETAIL_MISMATCH";
inline constexpr const char* INTERNAL_WITH_COMPANY = "INTERNAL_WITH_COMPANY";
// Validator warnings.
inline constexpr const char* DISTRIBUTION_SUM = "DISTRIBUTION_SUM";
inline constexpr const char* EMPTY_DESCRIPTION = "EMPTY_DESCRIPTION";
inline constexpr const char* EMPTY_PROJECT_NAME = "EMPTY_PROJECT_NAME";
} // namespace diag

} // namespace divcard
