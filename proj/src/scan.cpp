#include "divcard/scan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

namespace divcard::scan {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// File name matching
// ---------------------------------------------------------------------------

std::string_view toToken(FileCategory c) {
    switch (c) {
    case FileCategory::readme: return "readme";
    case FileCategory::contributing: return "contributing";
    case FileCategory::codeOfConduct: return "codeOfConduct";
    case FileCategory::governance: return "governance";
    case FileCategory::codeowners: return "codeowners";
    case FileCategory::community: return "community";
    case FileCategory::support: return "support";
    case FileCategory::security: return "security";
    case FileCategory::release: return "release";
    case FileCategory::funding: return "funding";
    }
    return "";
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Base spellings per category, compared after lowercasing and removing
// '-'/'_' separators.
struct NameVariant {
    const char* base;
    FileCategory category;
};

constexpr NameVariant kNameTable[] = {
    {"readme", FileCategory::readme},
    {"contributing", FileCategory::contributing},
    {"contribute", FileCategory::contributing},
    {"contributors", FileCategory::contributing},
    {"codeofconduct", FileCategory::codeOfConduct},
    {"coc", FileCategory::codeOfConduct},
    {"conduct", FileCategory::codeOfConduct},
    {"governance", FileCategory::governance},
    {"governing", FileCategory::governance},
    {"codeowners", FileCategory::codeowners},
    {"owners", FileCategory::codeowners},
    {"community", FileCategory::community},
    {"communityguidelines", FileCategory::community},
    {"support", FileCategory::support},
    {"security", FileCategory::security},
    {"release", FileCategory::release},
    {"releases", FileCategory::release},
    {"releasenotes", FileCategory::release},
    {"changelog", FileCategory::release},
    {"funding", FileCategory::funding},
    {"funders", FileCategory::funding},
    {"sponsors", FileCategory::funding},
    {"backers", FileCategory::funding},
};

constexpr const char* kKnownExtensions[] = {"md", "txt", "adoc", "rst", "markdown", "yml", "yaml"};

} // namespace

std::optional<FileCategory> matchCommunityFile(std::string_view fileName) {
    return matchCommunityFile(fileName, NameTable{});
}

std::optional<FileCategory> matchCommunityFile(std::string_view fileName,
                                               const NameTable& table) {
    std::string name = lower(fileName);
    if (name.empty() || name.find('/') != std::string::npos) return std::nullopt;
    if (size_t dot = name.rfind('.'); dot != std::string::npos) {
        std::string ext = name.substr(dot + 1);
        bool known = std::any_of(std::begin(kKnownExtensions), std::end(kKnownExtensions),
                                 [&](const char* e) { return ext == e; });
        if (!known) return std::nullopt; // main.py and friends
        name.resize(dot);
    }
    std::string squashed;
    for (char c : name)
        if (c != '-' && c != '_' && c != ' ') squashed += c;
    for (const auto& v : kNameTable)
        if (squashed == v.base) return v.category;
    for (const auto& [category, base] : table.extra) {
        std::string extraSquashed;
        for (char c : lower(base))
            if (c != '-' && c != '_' && c != ' ') extraSquashed += c;
        if (squashed == extraSquashed) return category;
    }
    return std::nullopt;
}

std::optional<FileCategory> fileCategoryFromToken(std::string_view token) {
    for (FileCategory c :
         {FileCategory::readme, FileCategory::contributing, FileCategory::codeOfConduct,
          FileCategory::governance, FileCategory::codeowners, FileCategory::community,
          FileCategory::support, FileCategory::security, FileCategory::release,
          FileCategory::funding}) {
        if (toToken(c) == token) return c;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Local collection
// ---------------------------------------------------------------------------

namespace {

// Replaces invalid UTF-8 sequences with U+FFFD so downstream text handling
// can assume well-formed content.
std::string sanitizeUtf8(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    size_t i = 0;
    auto cont = [&](size_t k) {
        return i + k < in.size() && (static_cast<unsigned char>(in[i + k]) & 0xC0) == 0x80;
    };
    while (i < in.size()) {
        unsigned char c = in[i];
        size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3
                     : (c & 0xF8) == 0xF0              ? 4
                                                       : 0;
        bool ok = len > 0;
        for (size_t k = 1; ok && k < len; ++k) ok = cont(k);
        if (ok) {
            out.append(in.substr(i, len));
            i += len;
        } else {
            out += "\xEF\xBF\xBD";
            ++i;
        }
    }
    return out;
}

std::string readFileLossy(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return normalizeText(data);
}

} // namespace

// CRLF checkouts must scan identically to LF ones, so collected content is
// newline-normalized before classification quotes it.
std::string normalizeText(std::string_view raw) {
    std::string out = sanitizeUtf8(raw);
    std::string normalized;
    normalized.reserve(out.size());
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i] == '\r' && i + 1 < out.size() && out[i + 1] == '\n') continue;
        normalized += out[i];
    }
    return normalized;
}

Result<CommunityFileSet> collectLocal(const std::filesystem::path& root,
                                      const NameTable& table) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec) || ec)
        return Result<CommunityFileSet>::failure(
            IO_ERROR, "not a readable directory: " + root.string());

    CommunityFileSet set;
    auto scanDir = [&](const std::filesystem::path& dir, const std::string& prefix) {
        std::error_code dirEc;
        std::filesystem::directory_iterator it(dir, dirEc), end;
        if (dirEc) return;
        for (; it != end; it.increment(dirEc)) {
            if (dirEc) break;
            if (!it->is_regular_file(dirEc) || dirEc) continue;
            auto name = it->path().filename().string();
            if (auto category = matchCommunityFile(name, table)) {
                set.entries.push_back(
                    {*category, prefix + name, readFileLossy(it->path())});
            }
        }
    };
    scanDir(root, "");
    scanDir(root / ".github", ".github/");
    scanDir(root / "docs", "docs/");
    std::sort(set.entries.begin(), set.entries.end(),
              [](const CommunityFile& a, const CommunityFile& b) { return a.path < b.path; });
    return Result<CommunityFileSet>::success(std::move(set));
}

// ---------------------------------------------------------------------------
// Rule-based classifier
// ---------------------------------------------------------------------------

std::string_view toToken(Area a) {
    switch (a) {
    case Area::A1: return "A1";
    case Area::A2: return "A2";
    case Area::A3: return "A3";
    case Area::A4: return "A4";
    case Area::A5: return "A5";
    }
    return "";
}

std::string_view areaTitle(Area a) {
    switch (a) {
    case Area::A1: return "development team";
    case Area::A2: return "non-coding contributors";
    case Area::A3: return "tests with users";
    case Area::A4: return "usage context";
    case Area::A5: return "governance and funders";
    }
    return "";
}

std::vector<std::string_view> areaSubKeys(Area a) {
    switch (a) {
    case Area::A1: return {"profileAspects"};
    case Area::A2: return {"nonCodingRoles"};
    case Area::A3: return {"labourForce", "platforms"};
    case Area::A4: return {"targetPopulation", "adaptation"};
    case Area::A5: return {"funders"};
    }
    return {};
}

bool AreaFinding::sub(std::string_view key) const {
    for (const auto& [k, v] : subfindings)
        if (k == key) return v;
    return false;
}

namespace {

enum class Match { word, prefix, phrase };

struct LexEntry {
    const char* text;
    Match mode;
};

// The rulebook. Presence lexicons detect the area at all; sub-lexicons mark
// the refined sub-findings when they land within three sentences of a
// presence hit.
const std::vector<LexEntry>& presenceLexicon(Area a) {
    static const std::vector<LexEntry> a1 = {
        {"team", Match::prefix},       {"maintainer", Match::prefix},
        {"developer", Match::prefix},  {"developed by", Match::phrase},
        {"core contributors", Match::phrase},
    };
    static const std::vector<LexEntry> a2 = {
        {"translator", Match::prefix},        {"documenter", Match::prefix},
        {"issue report", Match::phrase},      {"bug report", Match::phrase},
        {"reviewer", Match::prefix},          {"advocate", Match::prefix},
        {"non-coding", Match::phrase},        {"translation", Match::prefix},
        {"help with documentation", Match::phrase},
        {"improve the documentation", Match::phrase},
        {"documentation contribution", Match::phrase},
    };
    static const std::vector<LexEntry> a3 = {
        {"beta test", Match::phrase},      {"usability test", Match::phrase},
        {"user test", Match::phrase},      {"crowd test", Match::phrase},
        {"crowdtest", Match::prefix},      {"testers", Match::word},
        {"user stud", Match::phrase},      {"tested with users", Match::phrase},
    };
    static const std::vector<LexEntry> a4 = {
        {"designed for", Match::phrase}, {"intended for", Match::phrase},
        {"built for", Match::phrase},    {"aimed at", Match::phrase},
        {"use case", Match::phrase},     {"accessib", Match::prefix},
        {"localization", Match::prefix}, {"localisation", Match::prefix},
    };
    static const std::vector<LexEntry> a5 = {
        {"governance", Match::word},        {"board", Match::word},
        {"funded by", Match::phrase},       {"sponsor", Match::prefix},
        {"funding", Match::word},           {"steering committee", Match::phrase},
        {"foundation", Match::word},        {"grant", Match::word},
        {"donation", Match::prefix},        {"open collective", Match::phrase},
        {"open_collective", Match::phrase}, {"opencollective", Match::prefix},
        {"github sponsors", Match::phrase}, {"patreon", Match::word},
    };
    switch (a) {
    case Area::A1: return a1;
    case Area::A2: return a2;
    case Area::A3: return a3;
    case Area::A4: return a4;
    case Area::A5: return a5;
    }
    return a1;
}

const std::vector<LexEntry>& subLexicon(Area a, std::string_view key) {
    static const std::vector<LexEntry> profileAspects = {
        {"based in", Match::phrase},   {"nationalit", Match::prefix},
        {"gender", Match::prefix},     {"years of experience", Match::phrase},
        {"countries", Match::word},    {"ethnic", Match::prefix},
        {"women", Match::word},        {"age range", Match::phrase},
        {"divers", Match::prefix},     {"backgrounds", Match::word},
    };
    static const std::vector<LexEntry> nonCodingRoles = {
        {"translator", Match::prefix},   {"documenter", Match::prefix},
        {"reviewer", Match::prefix},     {"issue reporter", Match::phrase},
        {"bug reporter", Match::phrase}, {"advocate", Match::prefix},
        {"reporters", Match::word},
    };
    static const std::vector<LexEntry> labourForce = {
        {"paid", Match::word},        {"hired", Match::word},
        {"compensat", Match::prefix}, {"labour", Match::word},
        {"labor", Match::word},
    };
    static const std::vector<LexEntry> platforms = {
        {"testflight", Match::prefix},      {"play store", Match::phrase},
        {"app store", Match::phrase},       {"utest", Match::word},
        {"testing platform", Match::phrase}, {"beta channel", Match::phrase},
        {"beta program", Match::phrase},
    };
    static const std::vector<LexEntry> targetPopulation = {
        {"designed for", Match::phrase}, {"intended for", Match::phrase},
        {"aimed at", Match::phrase},     {"for people", Match::phrase},
        {"users with", Match::phrase},   {"elderly", Match::word},
        {"children", Match::word},       {"students", Match::word},
        {"researchers", Match::word},    {"scientists", Match::word},
        {"beginners", Match::word},      {"non-technical", Match::phrase},
    };
    static const std::vector<LexEntry> adaptation = {
        {"localization", Match::prefix}, {"localisation", Match::prefix},
        {"translated into", Match::phrase}, {"accessib", Match::prefix},
        {"screen reader", Match::phrase},   {"high contrast", Match::phrase},
        {"high-contrast", Match::phrase},   {"keyboard navigation", Match::phrase},
    };
    static const std::vector<LexEntry> funders = {
        {"funded by", Match::phrase},     {"sponsor", Match::prefix},
        {"donation", Match::prefix},      {"backers", Match::word},
        {"grant", Match::word},           {"crowdfunding", Match::word},
        {"open collective", Match::phrase}, {"opencollective", Match::prefix},
        {"open_collective", Match::phrase}, {"github sponsors", Match::phrase},
        {"patreon", Match::word},
    };
    static const std::vector<LexEntry> none;
    if (a == Area::A1 && key == "profileAspects") return profileAspects;
    if (a == Area::A2 && key == "nonCodingRoles") return nonCodingRoles;
    if (a == Area::A3 && key == "labourForce") return labourForce;
    if (a == Area::A3 && key == "platforms") return platforms;
    if (a == Area::A4 && key == "targetPopulation") return targetPopulation;
    if (a == Area::A4 && key == "adaptation") return adaptation;
    if (a == Area::A5 && key == "funders") return funders;
    return none;
}

constexpr int kSentenceWindow = 3;   // max sentence distance for co-occurrence
constexpr size_t kExcerptCap = 240;  // evidence length cap
constexpr size_t kMaxEvidencePerArea = 3;

bool isWordByte(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

// All match offsets of one lexicon entry in the lowercased text.
std::vector<size_t> findHits(const std::string& text, const LexEntry& entry) {
    std::vector<size_t> hits;
    std::string needle = entry.text;
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        bool startOk = pos == 0 || !isWordByte(text[pos - 1]);
        size_t end = pos + needle.size();
        bool endOk = end >= text.size() || !isWordByte(text[end]);
        bool accept = entry.mode == Match::phrase ? startOk
                      : entry.mode == Match::word ? (startOk && endOk)
                                                  : startOk; // prefix
        if (accept) hits.push_back(pos);
        pos += 1;
    }
    return hits;
}

// A file split into sentences with enough geometry to produce spans.
struct FileText {
    const CommunityFile* file;
    std::string lowered;
    std::vector<std::pair<size_t, size_t>> sentences; // [begin, end) offsets
    std::vector<size_t> lineStarts;

    explicit FileText(const CommunityFile& f) : file(&f) {
        lowered = lower(f.content);
        segment(f.content);
        lineStarts.push_back(0);
        for (size_t i = 0; i < f.content.size(); ++i)
            if (f.content[i] == '\n') lineStarts.push_back(i + 1);
    }

    // Sentences break at ./!/? followed by whitespace and at line ends, which
    // also covers markdown headings and bullet lists.
    void segment(const std::string& text) {
        size_t begin = 0;
        for (size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            bool boundary = c == '\n';
            if ((c == '.' || c == '!' || c == '?') &&
                (i + 1 >= text.size() || text[i + 1] == ' ' || text[i + 1] == '\n' ||
                 text[i + 1] == '\t'))
                boundary = true;
            if (boundary) {
                size_t end = i + 1;
                if (trimmedNonEmpty(text, begin, end)) sentences.emplace_back(begin, end);
                begin = end;
            }
        }
        if (trimmedNonEmpty(text, begin, text.size()))
            sentences.emplace_back(begin, text.size());
    }

    static bool trimmedNonEmpty(const std::string& text, size_t b, size_t e) {
        for (size_t i = b; i < e; ++i)
            if (!std::isspace(static_cast<unsigned char>(text[i]))) return true;
        return false;
    }

    int sentenceOf(size_t offset) const {
        for (size_t k = 0; k < sentences.size(); ++k)
            if (offset >= sentences[k].first && offset < sentences[k].second)
                return static_cast<int>(k);
        return sentences.empty() ? 0 : static_cast<int>(sentences.size()) - 1;
    }

    std::pair<int, int> lineColOf(size_t offset) const {
        auto it = std::upper_bound(lineStarts.begin(), lineStarts.end(), offset);
        size_t lineIdx = size_t(it - lineStarts.begin()) - 1;
        return {static_cast<int>(lineIdx) + 1,
                static_cast<int>(offset - lineStarts[lineIdx]) + 1};
    }

    // The matched sentence plus one neighbour on each side, trimmed and
    // capped; the span covers exactly the quoted bytes.
    Evidence evidenceAround(int sentence) const {
        const std::string& text = file->content;
        int lo = std::max(0, sentence - 1);
        int hi = std::min(static_cast<int>(sentences.size()) - 1, sentence + 1);
        size_t begin = sentences[size_t(lo)].first;
        size_t end = sentences[size_t(hi)].second;
        while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
        while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
        if (end - begin > kExcerptCap) end = begin + kExcerptCap;
        Evidence ev;
        ev.path = file->path;
        ev.excerpt = text.substr(begin, end - begin);
        auto [sl, sc] = lineColOf(begin);
        auto [el, ecol] = lineColOf(end > begin ? end - 1 : begin);
        ev.span = {file->path, sl, sc, el, ecol};
        return ev;
    }
};

struct AreaHits {
    std::vector<int> presenceSentences; // per file text, sentence indices
};

} // namespace

std::vector<AreaFinding> classifyRule(const CommunityFileSet& files) {
    std::vector<FileText> texts;
    texts.reserve(files.entries.size());
    for (const auto& f : files.entries) texts.emplace_back(f);

    std::vector<AreaFinding> findings;
    for (Area area : {Area::A1, Area::A2, Area::A3, Area::A4, Area::A5}) {
        AreaFinding finding;
        finding.area = area;
        for (auto key : areaSubKeys(area)) finding.subfindings.emplace_back(key, false);

        std::vector<Evidence> presenceEvidence;
        std::map<std::string_view, std::vector<Evidence>> subEvidence;

        for (const auto& ft : texts) {
            std::set<int> presenceSentences;
            for (const auto& entry : presenceLexicon(area))
                for (size_t off : findHits(ft.lowered, entry))
                    presenceSentences.insert(ft.sentenceOf(off));
            if (presenceSentences.empty()) continue;

            finding.present = true;
            for (int s : presenceSentences) {
                if (presenceEvidence.size() >= kMaxEvidencePerArea) break;
                Evidence ev = ft.evidenceAround(s);
                if (std::find(presenceEvidence.begin(), presenceEvidence.end(), ev) ==
                    presenceEvidence.end())
                    presenceEvidence.push_back(std::move(ev));
            }

            for (auto key : areaSubKeys(area)) {
                for (const auto& entry : subLexicon(area, key)) {
                    for (size_t off : findHits(ft.lowered, entry)) {
                        int s = ft.sentenceOf(off);
                        bool near = std::any_of(
                            presenceSentences.begin(), presenceSentences.end(),
                            [&](int p) { return std::abs(p - s) <= kSentenceWindow; });
                        if (!near) continue;
                        for (auto& [k, v] : finding.subfindings)
                            if (k == key) v = true;
                        auto& bucket = subEvidence[key];
                        if (bucket.size() >= kMaxEvidencePerArea) continue;
                        Evidence ev = ft.evidenceAround(s);
                        if (std::find(bucket.begin(), bucket.end(), ev) == bucket.end())
                            bucket.push_back(std::move(ev));
                    }
                }
            }
        }

        finding.evidence = std::move(presenceEvidence);
        for (auto key : areaSubKeys(area)) {
            for (auto& ev : subEvidence[key]) {
                if (std::find(finding.evidence.begin(), finding.evidence.end(), ev) ==
                    finding.evidence.end())
                    finding.evidence.push_back(std::move(ev));
            }
        }
        findings.push_back(std::move(finding));
    }
    return findings;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

std::string_view toToken(ScanBackend b) { return b == ScanBackend::rule ? "rule" : "llm"; }

ScanReport makeReport(std::string repo, std::string collectedAt, const CommunityFileSet& files,
                      std::vector<AreaFinding> findings, ScanBackend backend) {
    ScanReport report;
    report.repo = std::move(repo);
    report.collectedAt = std::move(collectedAt);
    for (const auto& f : files.entries)
        report.files.emplace_back(std::string(toToken(f.category)), f.path);
    report.findings = std::move(findings);
    report.backend = backend;
    return report;
}

std::string reportToJson(const ScanReport& report) {
    Json root;
    root["repo"] = report.repo;
    root["collectedAt"] = report.collectedAt;
    root["backend"] = std::string(toToken(report.backend));
    auto& files = root["files"] = Json::array();
    for (const auto& [category, path] : report.files)
        files.push_back(Json{{"category", category}, {"path", path}});
    auto& findings = root["findings"] = Json::array();
    for (const auto& f : report.findings) {
        Json j;
        j["area"] = std::string(toToken(f.area));
        j["title"] = std::string(areaTitle(f.area));
        j["present"] = f.present;
        Json subs = Json::object();
        for (const auto& [k, v] : f.subfindings) subs[k] = v;
        j["subfindings"] = std::move(subs);
        auto& evidence = j["evidence"] = Json::array();
        for (const auto& ev : f.evidence) {
            Json e;
            e["path"] = ev.path;
            if (ev.span.startLine > 0) {
                e["span"] = Json{{"startLine", ev.span.startLine},
                                 {"startCol", ev.span.startCol},
                                 {"endLine", ev.span.endLine},
                                 {"endCol", ev.span.endCol}};
            }
            e["excerpt"] = ev.excerpt;
            evidence.push_back(std::move(e));
        }
        findings.push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

std::string reportToText(const ScanReport& report) {
    std::string out;
    out += "repo: " + report.repo + "\n";
    out += "collected: " + report.collectedAt + "\n";
    out += "backend: " + std::string(toToken(report.backend)) + "\n";
    out += "files: " + std::to_string(report.files.size()) + "\n";
    for (const auto& [category, path] : report.files)
        out += "  " + category + ": " + path + "\n";
    for (const auto& f : report.findings) {
        out += std::string(toToken(f.area)) + " (" + std::string(areaTitle(f.area)) +
               "): " + (f.present ? "present" : "absent");
        std::string subs;
        for (const auto& [k, v] : f.subfindings)
            if (v) subs += (subs.empty() ? "" : ", ") + k;
        if (!subs.empty()) out += " [" + subs + "]";
        out += "\n";
        for (const auto& ev : f.evidence) {
            std::string quote = ev.excerpt;
            std::replace(quote.begin(), quote.end(), '\n', ' ');
            if (quote.size() > 100) quote = quote.substr(0, 100) + "...";
            out += "    " + ev.path + ": " + quote + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Skeleton card
// ---------------------------------------------------------------------------

namespace {

std::string stubDescription(const AreaFinding& f) {
    if (f.evidence.empty()) return "Detected by repository scan.";
    const auto& ev = f.evidence.front();
    std::string quote = ev.excerpt;
    std::replace(quote.begin(), quote.end(), '\n', ' ');
    if (quote.size() > 160) quote = quote.substr(0, 160);
    return "Evidence (" + ev.path + "): " + quote;
}

const AreaFinding* findArea(const ScanReport& report, Area a) {
    for (const auto& f : report.findings)
        if (f.area == a) return &f;
    return nullptr;
}

} // namespace

Card skeletonCard(const ScanReport& report, std::string projectName) {
    Card card;
    card.projectName = std::move(projectName);
    card.description = "Skeleton card generated from a repository scan; fill in the profiles.";

    if (const auto* a1 = findArea(report, Area::A1); a1 && a1->present) {
        Team t;
        t.id = "developmentTeam";
        t.kind = TeamKind::development;
        t.profile.description = stubDescription(*a1);
        card.addTeam(std::move(t));
    }
    if (const auto* a2 = findArea(report, Area::A2); a2 && a2->present) {
        Team t;
        t.id = "nonCodingContributors";
        t.kind = TeamKind::nonCodingContributor;
        t.profile.description = stubDescription(*a2);
        card.addTeam(std::move(t));
    }
    if (const auto* a3 = findArea(report, Area::A3); a3 && a3->present) {
        Team t;
        t.id = "testers";
        t.kind = TeamKind::tester;
        t.profile.description = stubDescription(*a3);
        card.addTeam(std::move(t));
    }
    if (const auto* a4 = findArea(report, Area::A4); a4 && a4->present) {
        bool hasCommunity = a4->sub("targetPopulation");
        if (hasCommunity) {
            TargetCommunity tc;
            tc.id = "targetCommunity";
            tc.profile.description = stubDescription(*a4);
            card.addTargetCommunity(std::move(tc));
        }
        if (a4->sub("adaptation")) {
            Adaptation ad;
            ad.id = "adaptation";
            ad.description = stubDescription(*a4);
            if (hasCommunity) ad.targetCommunities.emplace_back("targetCommunity");
            card.addAdaptation(std::move(ad));
        }
    }
    if (const auto* a5 = findArea(report, Area::A5); a5 && a5->present) {
        Body b;
        b.id = "governanceBody";
        b.decisionProcess = stubDescription(*a5);
        card.addBody(std::move(b));
        if (a5->sub("funders")) {
            Funder f;
            f.id = "funder";
            f.description = stubDescription(*a5);
            card.addFunder(std::move(f));
        }
    }
    return card;
}

} // namespace divcard::scan
