#include "divcard/diagnostics.hpp"

namespace divcard {

namespace {

// Kept in sync with docs/diagnostics.md (a test regenerates the table).
constexpr DiagnosticInfo kRegistry[] = {
    {diag::SYN_EXPECTED_DECL, Severity::error,
     "expected a top-level declaration keyword"},
    {diag::SYN_EXPECTED_COLON, Severity::error, "expected ':' after field name"},
    {diag::SYN_MISSING_VALUE, Severity::error, "field has no value"},
    {diag::SYN_BAD_VALUE, Severity::error, "value cannot start here"},
    {diag::SYN_BAD_DATE, Severity::error, "dates are written DD-MM-YYYY and must be valid"},
    {diag::SYN_BAD_ENUM, Severity::error, "token is not a member of the expected enumeration"},
    {diag::SYN_EXPECTED_RPAREN, Severity::error, "expected ')' to close a pair"},
    {diag::SYN_UNEXPECTED_CHAR, Severity::error, "character cannot appear here"},
    {diag::SYN_UNKNOWN_FIELD, Severity::warning, "unknown field ignored"},
    {diag::SYN_DUPLICATE_FIELD, Severity::warning, "field repeated in this block; last one wins"},
    {diag::SYN_UNTERMINATED_STRING, Severity::warning,
     "string literal not closed before end of line"},
    {diag::SYN_UNCLOSED_ARRAY, Severity::warning, "array implicitly closed"},
    {diag::UNRESOLVED_REF, Severity::error, "reference does not match any declared id"},
    {diag::DUPLICATE_ID, Severity::error, "id already declared"},
    {diag::UNKNOWN_COUNTRY, Severity::error, "not an ISO 3166-1 country code or name"},
    {diag::UNKNOWN_LANGUAGE, Severity::error, "not an ISO 639 language code or name"},
    {diag::RANGE_INVERTED, Severity::error, "age range must satisfy 0 <= min <= max <= 130"},
    {diag::BAD_MEMBERSHIP_DATES, Severity::error, "membership ends before it starts"},
    {diag::TEAMSIZE_LT_MEMBERS, Severity::error,
     "teamSize is smaller than the listed membership"},
    {diag::NEGATIVE_TENURE, Severity::error, "tenure must be >= 0"},
    {diag::KIND_DETAIL_MISMATCH, Severity::error,
     "field belongs to a different team kind"},
    {diag::INTERNAL_WITH_COMPANY, Severity::error,
     "internal sourcing must not name an outside company"},
    {diag::DISTRIBUTION_SUM, Severity::warning, "percentages do not add up to 100"},
    {diag::EMPTY_DESCRIPTION, Severity::warning, "element has no description"},
    {diag::EMPTY_PROJECT_NAME, Severity::warning, "card has no project name"},
};

} // namespace

std::span<const DiagnosticInfo> diagnosticRegistry() { return kRegistry; }

const DiagnosticInfo* findDiagnostic(std::string_view code) {
    for (const auto& info : kRegistry)
        if (code == info.code) return &info;
    return nullptr;
}

} // namespace divcard
