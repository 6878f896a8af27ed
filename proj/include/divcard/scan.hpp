#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divcard/diagnostics.hpp"
#include "divcard/model.hpp"

namespace divcard::scan {

inline constexpr const char* IO_ERROR = "IO_ERROR";

// ---------------------------------------------------------------------------
// Community documentation files
// ---------------------------------------------------------------------------

enum class FileCategory {
    readme,
    contributing,
    codeOfConduct,
    governance,
    codeowners,
    community,
    support,
    security,
    release,
    funding,
};
std::string_view toToken(FileCategory c);

// Extra base spellings merged into the built-in variant table, e.g.
// {codeOfConduct, "behaviour"} lets BEHAVIOUR.md match.
struct NameTable {
    std::vector<std::pair<FileCategory, std::string>> extra;
};

// Case-insensitive match of a bare file name against the variant table:
// separators '-', '_' or none; extensions md/txt/adoc/rst/markdown/yml/yaml
// or none; abbreviations such as coc -> codeOfConduct. "main.py" matches
// nothing.
std::optional<FileCategory> matchCommunityFile(std::string_view fileName);
std::optional<FileCategory> matchCommunityFile(std::string_view fileName,
                                               const NameTable& table);

std::optional<FileCategory> fileCategoryFromToken(std::string_view token);

struct CommunityFile {
    FileCategory category = FileCategory::readme;
    std::string path;    // repo-relative, forward slashes
    std::string content; // UTF-8, invalid bytes replaced

    friend bool operator==(const CommunityFile&, const CommunityFile&) = default;
};

struct CommunityFileSet {
    std::vector<CommunityFile> entries; // sorted by path

    friend bool operator==(const CommunityFileSet&, const CommunityFileSet&) = default;
};

// UTF-8 lossy decoding plus CRLF -> LF, applied to all collected content.
std::string normalizeText(std::string_view raw);

// Scans the repository root plus .github/ and docs/ (one level deep).
Result<CommunityFileSet> collectLocal(const std::filesystem::path& root,
                                      const NameTable& table = {});

// ---------------------------------------------------------------------------
// Diversity areas A1-A5
// ---------------------------------------------------------------------------

enum class Area { A1, A2, A3, A4, A5 };
std::string_view toToken(Area a);
std::string_view areaTitle(Area a);

// The sub-finding keys of each area, in report order.
std::vector<std::string_view> areaSubKeys(Area a);

struct Evidence {
    std::string path;
    SourceSpan span;     // empty when the excerpt could not be located
    std::string excerpt; // verbatim, <= 240 chars
    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct AreaFinding {
    Area area = Area::A1;
    bool present = false;
    std::vector<std::pair<std::string, bool>> subfindings; // fixed keys per area
    std::vector<Evidence> evidence;

    bool sub(std::string_view key) const;
};

// Deterministic lexicon-based classifier: presence needs a lexicon hit,
// sub-findings need a presence hit and a sub-lexicon hit at most three
// sentences apart. Evidence quotes the matched sentence plus one neighbour,
// capped at 240 characters.
std::vector<AreaFinding> classifyRule(const CommunityFileSet& files);

// ---------------------------------------------------------------------------
// Scan report
// ---------------------------------------------------------------------------

enum class ScanBackend { rule, llm };
std::string_view toToken(ScanBackend b);

struct ScanReport {
    std::string repo;
    std::string collectedAt; // ISO 8601 UTC
    std::vector<std::pair<std::string, std::string>> files; // (category, path)
    std::vector<AreaFinding> findings; // exactly five, A1..A5
    ScanBackend backend = ScanBackend::rule;
};

ScanReport makeReport(std::string repo, std::string collectedAt, const CommunityFileSet& files,
                      std::vector<AreaFinding> findings, ScanBackend backend);

// Same formatting rules as the card JSON emitter (2-space indent, ordered
// keys, trailing newline).
std::string reportToJson(const ScanReport& report);
std::string reportToText(const ScanReport& report);

// Minimal card bridging scanner output into the DSL: one stub per detected
// area, each description citing its evidence excerpt. Formats and validates
// with warnings only.
Card skeletonCard(const ScanReport& report, std::string projectName);

} // namespace divcard::scan
