#include "divcard/codes.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace divcard {

namespace {

constexpr CountryInfo kCountries[] = {
#include "iso3166_data.inc"
};

constexpr LanguageInfo kLanguages[] = {
#include "iso639_data.inc"
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trimmed(std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

// "Bolivia (Plurinational State of)" -> "Bolivia"; "Bahamas (the)" -> "Bahamas".
std::string stripQualifier(std::string_view name) {
    std::string s(name);
    if (size_t p = s.find(" ("); p != std::string::npos) s.resize(p);
    if (s.size() > 5 && s.ends_with(", the")) s.resize(s.size() - 5);
    return trimmed(s);
}

struct CountryIndex {
    std::unordered_map<std::string, const CountryInfo*> exact;   // codes + full names
    std::unordered_map<std::string, const CountryInfo*> stripped; // base-name fallbacks

    CountryIndex() {
        for (const auto& c : kCountries) {
            exact.emplace(lower(c.alpha2), &c);
            exact.emplace(lower(c.name), &c);
            auto base = lower(stripQualifier(c.name));
            stripped.emplace(base, &c); // first entry in table order wins
        }
    }
};

struct LanguageIndex {
    std::unordered_map<std::string, const LanguageInfo*> exact;   // codes + joined names
    std::unordered_map<std::string, const LanguageInfo*> parts;   // individual/base names

    LanguageIndex() {
        for (const auto& l : kLanguages) {
            exact.emplace(lower(l.code), &l);
            exact.emplace(lower(l.displayName()), &l);
            for (const auto& part : l.nameParts()) {
                parts.emplace(lower(part), &l);
                auto base = stripQualifier(part);
                if (size_t comma = base.find(','); comma != std::string::npos) base.resize(comma);
                parts.emplace(lower(trimmed(base)), &l);
            }
        }
    }
};

const CountryIndex& countryIndex() {
    static const CountryIndex index;
    return index;
}

const LanguageIndex& languageIndex() {
    static const LanguageIndex index;
    return index;
}

} // namespace

std::string LanguageInfo::displayName() const {
    std::string out;
    for (const auto& part : nameParts()) {
        if (!out.empty()) out += '-';
        out += part;
    }
    return out;
}

std::vector<std::string> LanguageInfo::nameParts() const {
    std::vector<std::string> parts;
    std::string_view s(names);
    while (!s.empty()) {
        size_t semi = s.find(';');
        parts.push_back(trimmed(s.substr(0, semi)));
        if (semi == std::string_view::npos) break;
        s.remove_prefix(semi + 1);
    }
    return parts;
}

std::span<const CountryInfo> countryTable() { return kCountries; }
std::span<const LanguageInfo> languageTable() { return kLanguages; }

const CountryInfo* lookupCountry(std::string_view token) {
    auto key = lower(trimmed(token));
    if (key.empty()) return nullptr;
    const auto& idx = countryIndex();
    if (auto it = idx.exact.find(key); it != idx.exact.end()) return it->second;
    if (auto it = idx.stripped.find(key); it != idx.stripped.end()) return it->second;
    return nullptr;
}

const LanguageInfo* lookupLanguage(std::string_view token) {
    auto key = lower(trimmed(token));
    if (key.empty()) return nullptr;
    const auto& idx = languageIndex();
    if (auto it = idx.exact.find(key); it != idx.exact.end()) return it->second;
    if (auto it = idx.parts.find(key); it != idx.parts.end()) return it->second;
    return nullptr;
}

} // namespace divcard
