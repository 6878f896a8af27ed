#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divcard {

struct CountryInfo {
    const char* alpha2;
    const char* name; // ISO 3166-1 English short name
};

struct LanguageInfo {
    const char* code;  // ISO 639-1
    const char* names; // English reference names, "; "-separated when multiple

    // "Catalan; Valencian" renders as "Catalan-Valencian".
    std::string displayName() const;
    std::vector<std::string> nameParts() const;
};

std::span<const CountryInfo> countryTable();
std::span<const LanguageInfo> languageTable();

// Case-insensitive lookup over alpha-2 codes and name forms. Names with a
// parenthetical or ", the"-style qualifier also match their stripped base
// form ("Bolivia (Plurinational State of)" matches "Bolivia"); qualified
// matches resolve in table order. Returns nullptr for unknown tokens.
const CountryInfo* lookupCountry(std::string_view token);

// Case-insensitive lookup over ISO 639-1 codes, hyphen-joined reference
// names ("Catalan-Valencian"), individual name parts ("Valencian") and
// comma-qualified base names ("Greek" for "Greek, Modern (1453-)").
const LanguageInfo* lookupLanguage(std::string_view token);

} // namespace divcard
