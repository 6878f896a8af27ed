#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "divcard/scan.hpp"
#include "support/testutil.hpp"

using namespace divcard::scan;

namespace {

CommunityFileSet singleReadme(const std::string& text) {
    CommunityFileSet files;
    files.entries.push_back({FileCategory::readme, "README.md", text});
    return files;
}

const AreaFinding& finding(const std::vector<AreaFinding>& all, Area a) {
    for (const auto& f : all)
        if (f.area == a) return f;
    REQUIRE(false);
    return all.front();
}

} // namespace

TEST_CASE("collectLocal picks up community files from root, .github and docs") {
    auto set = collectLocal(testutil::fixturePath("repo_a"));
    REQUIRE(set.ok());
    REQUIRE(set->entries.size() == 2);
    CHECK(set->entries[0].path == ".github/SUPPORT.md");
    CHECK(set->entries[0].category == FileCategory::support);
    CHECK(set->entries[1].path == "README.md");
    CHECK(set->entries[1].category == FileCategory::readme);
    CHECK(set->entries[1].content.find("counting widgets") != std::string::npos);
}

TEST_CASE("collectLocal on an empty directory yields an empty set") {
    auto dir = std::filesystem::temp_directory_path() / "divcard_empty_repo";
    std::filesystem::create_directories(dir);
    auto set = collectLocal(dir);
    REQUIRE(set.ok());
    CHECK(set->entries.empty());
}

TEST_CASE("collectLocal reports missing directories") {
    auto set = collectLocal("does/not/exist");
    REQUIRE_FALSE(set.ok());
    CHECK(set.error.code == IO_ERROR);
}

TEST_CASE("a team sentence with profile vocabulary marks A1 and its sub-finding") {
    auto findings =
        classifyRule(singleReadme("Our core team is formed by 12 developers from 9 countries."));
    const auto& a1 = finding(findings, Area::A1);
    CHECK(a1.present);
    CHECK(a1.sub("profileAspects"));
    REQUIRE_FALSE(a1.evidence.empty());
    CHECK(a1.evidence.front().excerpt.find("core team") != std::string::npos);
}

TEST_CASE("acknowledging translators and reporters marks A2 with roles") {
    auto findings = classifyRule(singleReadme("Thanks to our translators and issue reporters."));
    const auto& a2 = finding(findings, Area::A2);
    CHECK(a2.present);
    CHECK(a2.sub("nonCodingRoles"));
}

TEST_CASE("an empty file set classifies all areas absent") {
    auto findings = classifyRule(CommunityFileSet{});
    REQUIRE(findings.size() == 5);
    for (const auto& f : findings) {
        CHECK_FALSE(f.present);
        for (const auto& [key, value] : f.subfindings) CHECK_FALSE(value);
        CHECK(f.evidence.empty());
    }
}

TEST_CASE("sub-findings require the presence hit within the sentence window") {
    std::string text = "The maintainers are listed in MAINTAINERS.\n\n"
                       "one filler sentence. two filler sentence. three filler sentence. "
                       "four filler sentence. five filler sentence. six filler sentence.\n\n"
                       "Our supporters come from many countries and genders.\n";
    auto findings = classifyRule(singleReadme(text));
    const auto& a1 = finding(findings, Area::A1);
    CHECK(a1.present);
    CHECK_FALSE(a1.sub("profileAspects")); // profile words too far from the team hit
}

TEST_CASE("evidence quotes the cited file verbatim at the cited span") {
    for (const auto& entry :
         std::filesystem::directory_iterator(testutil::fixturePath("corpus"))) {
        if (!entry.is_directory()) continue;
        auto set = collectLocal(entry.path());
        REQUIRE(set.ok());
        auto findings = classifyRule(*set);
        for (const auto& f : findings) {
            for (const auto& ev : f.evidence) {
                const CommunityFile* file = nullptr;
                for (const auto& candidate : set->entries)
                    if (candidate.path == ev.path) file = &candidate;
                REQUIRE(file != nullptr);
                CHECK(ev.excerpt.size() <= 240);
                CHECK(file->content.find(ev.excerpt) != std::string::npos);
                REQUIRE(ev.span.startLine >= 1);
                // The span's first line/column addresses the excerpt's first byte.
                size_t offset = 0;
                int line = 1;
                while (line < ev.span.startLine && offset < file->content.size()) {
                    if (file->content[offset] == '\n') ++line;
                    ++offset;
                }
                offset += size_t(ev.span.startCol - 1);
                CHECK(file->content.compare(offset, ev.excerpt.size(), ev.excerpt) == 0);
            }
            if (!f.present) {
                CHECK(f.evidence.empty());
                for (const auto& [key, value] : f.subfindings) CHECK_FALSE(value);
            } else {
                for (const auto& [key, value] : f.subfindings)
                    if (value) CHECK_FALSE(f.evidence.empty());
            }
        }
    }
}

TEST_CASE("classification is deterministic") {
    auto set = collectLocal(testutil::fixturePath("corpus/repo07"));
    REQUIRE(set.ok());
    auto first = classifyRule(*set);
    auto second = classifyRule(*set);
    auto report1 = makeReport("repo07", "2025-01-22T00:00:00Z", *set, first, ScanBackend::rule);
    auto report2 = makeReport("repo07", "2025-01-22T00:00:00Z", *set, second, ScanBackend::rule);
    CHECK(reportToJson(report1) == reportToJson(report2));
}

TEST_CASE("rule backend agrees with the hand-labeled corpus on at least 90 of 100 verdicts") {
    auto labels = nlohmann::json::parse(testutil::readFixture("corpus/labels.json"));
    int agree = 0, total = 0;
    std::vector<std::string> disagreements;
    for (const auto& [repo, areas] : labels["repos"].items()) {
        auto set = collectLocal(testutil::fixturePath("corpus/" + repo));
        REQUIRE(set.ok());
        auto findings = classifyRule(*set);
        for (const auto& f : findings) {
            bool expected = areas[std::string(toToken(f.area))].get<bool>();
            ++total;
            if (f.present == expected)
                ++agree;
            else
                disagreements.push_back(repo + "/" + std::string(toToken(f.area)));
        }
    }
    CHECK(total == 100);
    std::string detail;
    for (const auto& d : disagreements) detail += d + " ";
    CHECK_MESSAGE(agree >= 90, "agreement ", agree, "/100; disagreements: ", detail);
}

TEST_CASE("CRLF checkouts scan to the same report bytes") {
    namespace fs = std::filesystem;
    auto src = fs::path(testutil::fixturePath("corpus/repo07"));
    auto dst = fs::temp_directory_path() / "divcard_crlf_repo";
    fs::remove_all(dst);
    for (const auto& entry : fs::recursive_directory_iterator(src)) {
        auto rel = fs::relative(entry.path(), src);
        if (entry.is_directory()) {
            fs::create_directories(dst / rel);
            continue;
        }
        std::string text = testutil::slurp(entry.path().string());
        std::string crlf;
        for (char c : text) {
            if (c == '\n') crlf += '\r';
            crlf += c;
        }
        fs::create_directories((dst / rel).parent_path());
        std::ofstream out(dst / rel, std::ios::binary);
        out << crlf;
    }
    auto lfSet = collectLocal(src);
    auto crlfSet = collectLocal(dst);
    REQUIRE(lfSet.ok());
    REQUIRE(crlfSet.ok());
    auto lfReport = makeReport("repo", "2025-01-22T00:00:00Z", *lfSet, classifyRule(*lfSet),
                               ScanBackend::rule);
    auto crlfReport = makeReport("repo", "2025-01-22T00:00:00Z", *crlfSet,
                                 classifyRule(*crlfSet), ScanBackend::rule);
    CHECK(reportToJson(lfReport) == reportToJson(crlfReport));
}

TEST_CASE("collection stays one level deep in the conventional directories") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "divcard_depth_repo";
    fs::remove_all(dir);
    fs::create_directories(dir / "docs" / "nested");
    fs::create_directories(dir / "src");
    {
        std::ofstream(dir / "README.md") << "# top\n";
        std::ofstream(dir / "docs" / "SUPPORT.md") << "help\n";
        std::ofstream(dir / "docs" / "nested" / "GOVERNANCE.md") << "too deep\n";
        std::ofstream(dir / "src" / "CONTRIBUTING.md") << "wrong directory\n";
    }
    auto set = collectLocal(dir);
    REQUIRE(set.ok());
    REQUIRE(set->entries.size() == 2);
    CHECK(set->entries[0].path == "README.md");
    CHECK(set->entries[1].path == "docs/SUPPORT.md");
}
