// Acceptance suite: executes every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "divcard/emit.hpp"
#include "divcard/formatter.hpp"
#include "divcard/parser.hpp"
#include "divcard/remote.hpp"
#include "divcard/scan.hpp"
#include "divcard/validate.hpp"
#include "support/cardgen.hpp"
#include "support/testutil.hpp"

using namespace divcard;

namespace {

struct Failure {
    std::string reason;
};

void require(bool condition, const std::string& reason) {
    if (!condition) throw Failure{reason};
}

double secondsSince(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int parseErrors(const ParseResult& r) {
    int n = 0;
    for (const auto& d : r.diagnostics) n += d.severity == Severity::error;
    return n;
}

// ---------------------------------------------------------------------------

void criterion1_fixtureFidelity() {
    auto start = std::chrono::steady_clock::now();

    auto devExcerpt = parseCard(testutil::readFixture("excerpt_dev_team.divcard"), "excerpt_dev_team.divcard");
    require(parseErrors(devExcerpt) == 0, "development-team excerpt produced error diagnostics");
    require(devExcerpt.card.teams.size() == 1, "the development-team excerpt should declare one team");
    const Team& team = devExcerpt.card.teams.front();
    require(team.kind == TeamKind::development, "team kind");
    require(team.teamSize == 15, "teamSize 15");
    require(team.startDate == Date{2022, 8, 11}, "startDate 11-08-2022");
    require(team.profile.ageRange == AgeRange{25, 36}, "ageRange (25, 36)");
    require(team.profile.workplaceType == WorkplaceType::presential, "workplaceType presential");
    require(team.profile.ethnicities.size() == 10, "ten ethnicity entries");
    require(team.profile.religiousBeliefs.size() == 2, "two religious beliefs");
    require(team.profile.countries.size() == 1 && team.profile.countries[0].code == "LU",
            "countries [Luxembourg]");
    require(team.profile.educationalLevels ==
                std::vector<EducationLevel>{EducationLevel::masterEquivalent,
                                            EducationLevel::doctorateEquivalent},
            "educational levels");
    require(team.profile.spokenLanguages.size() == 1 &&
                team.profile.spokenLanguages[0].language.code == "en" &&
                team.profile.spokenLanguages[0].proficiency == Proficiency::c1,
            "(English, c1)");
    require(team.profile.averageTenure && *team.profile.averageTenure == 3.3,
            "averageTenure 3.3");
    require(team.profile.genders.size() == 1 && team.profile.genders[0].label == "male 80",
            "truncated gender label survives");

    auto usageExcerpt = parseCard(testutil::readFixture("excerpt_usage_context.divcard"), "excerpt_usage_context.divcard");
    require(parseErrors(usageExcerpt) == 0, "the usage-context excerpt produced error diagnostics");
    require(usageExcerpt.card.targetCommunities.size() == 2, "two target communities");
    const TargetCommunity& community = usageExcerpt.card.targetCommunities.front();
    require(community.id == "nonDigitalSkilled", "community id");
    require(community.profile.ageRange == AgeRange{60, 100}, "ageRange (60, 100)");
    require(community.profile.socioEconomicStati ==
                std::vector<SocioEconomicClass>{SocioEconomicClass::lowerClass,
                                                SocioEconomicClass::lowerMiddleClass},
            "socio-economic classes");
    require(community.profile.skillLevels == std::vector<SkillLevel>{SkillLevel::beginner},
            "skill levels");
    require(community.profile.spokenLanguages.size() == 2 &&
                community.profile.spokenLanguages[0].language.code == "ca" &&
                community.profile.spokenLanguages[0].proficiency == Proficiency::b1 &&
                community.profile.spokenLanguages[1].language.code == "es",
            "(Catalan-Valencian, b1), (Spanish-Castilian, b1)");
    require(usageExcerpt.card.adaptations.size() == 2, "two adaptations");
    require(usageExcerpt.card.adaptations[0].id == "DigitalDivide", "DigitalDivide");
    require(usageExcerpt.card.adaptations[0].targetCommunities.size() == 1 &&
                usageExcerpt.card.adaptations[0].targetCommunities[0].id == "nonDigitalSkilled",
            "DigitalDivide -> nonDigitalSkilled");

    // Combined, the two published excerpts validate with zero errors.
    auto combined = parseCard(testutil::readFixture("excerpt_usage_context.divcard") + "\n" +
                                  testutil::readFixture("excerpt_dev_team.divcard"),
                              "combined.divcard");
    require(parseErrors(combined) == 0, "combined excerpts parse");
    require(validate(combined.card).resolved, "combined excerpts validate with zero errors");

    require(secondsSince(start) < 1.0, "criterion must finish under one second");
}

void criterion2_mutationSuite() {
    size_t covered = 0;
    for (const auto& info : diagnosticRegistry()) {
        std::string fixture = std::string("mutations/") + info.code + ".divcard";
        auto parsed = parseCard(testutil::readFixture(fixture), fixture);
        auto report = validate(parsed.card);
        std::vector<Diagnostic> all = parsed.diagnostics;
        all.insert(all.end(), report.diagnostics.begin(), report.diagnostics.end());

        bool sawTarget = false;
        for (const auto& d : all) {
            if (d.code == info.code)
                sawTarget = true;
            else
                require(d.severity != Severity::error,
                        std::string(info.code) + " fixture leaked error " + d.code);
        }
        require(sawTarget, std::string(info.code) + " fixture did not trigger its code");
        ++covered;
    }
    require(covered == diagnosticRegistry().size(), "every registry code covered");
    require(covered >= 17, "at least 13 validator plus 4 parser codes");
}

void criterion3_roundTrips() {
    auto start = std::chrono::steady_clock::now();
    for (const char* fixture : {"excerpt_usage_context.divcard", "excerpt_dev_team.divcard", "besser.divcard",
                                "decidim.divcard", "mutations/SYN_UNKNOWN_FIELD.divcard"}) {
        auto parsed = parseCard(testutil::readFixture(fixture), fixture);
        std::string canonical = formatCard(parsed.card);
        auto reparsed = parseCard(canonical, "canonical");
        require(reparsed.card == parsed.card,
                std::string(fixture) + ": parse-format fixpoint diverged");
        require(formatCard(reparsed.card) == canonical,
                std::string(fixture) + ": formatting is not idempotent");
    }
    for (uint64_t seed = 0; seed < 500; ++seed) {
        cardgen::Gen gen(seed);
        Card card = gen.card();
        auto json = emitJson(card);
        require(json.ok(), "seed " + std::to_string(seed) + ": emit failed: " +
                               json.error.message);
        auto imported = importJson(*json);
        require(imported.ok(), "seed " + std::to_string(seed) + ": import failed: " +
                                   imported.error.message);
        require(*imported == card,
                "seed " + std::to_string(seed) + ": importJson(emitJson(card)) != card");
    }
    require(secondsSince(start) < 30.0, "round-trip properties must finish under 30 seconds");
}

void criterion4_determinism() {
    std::string source = testutil::readFixture("besser.divcard");
    auto lf = parseCard(source, "besser.divcard");

    // The same document with CRLF endings and a BOM must produce identical
    // bytes on every emitter.
    std::string crlf = "\xEF\xBB\xBF";
    for (char c : source) {
        if (c == '\n') crlf += "\r\n";
        else crlf += c;
    }
    auto windows = parseCard(crlf, "besser.divcard");

    auto json1 = emitJson(lf.card);
    auto json2 = emitJson(lf.card);
    auto json3 = emitJson(windows.card);
    require(json1.ok() && json2.ok() && json3.ok(), "emitJson failed");
    require(*json1 == *json2, "emitJson changed between runs");
    require(*json1 == *json3, "emitJson differs across line-ending environments");

    auto md1 = emitMarkdown(lf.card);
    auto md2 = emitMarkdown(windows.card);
    require(md1.ok() && md2.ok(), "emitMarkdown failed");
    require(*md1 == *md2, "emitMarkdown differs across line-ending environments");

    auto files = scan::collectLocal(testutil::fixturePath("corpus/repo07"));
    require(files.ok(), "corpus collection failed");
    auto reportA = scan::makeReport("repo07", "2025-01-22T00:00:00Z", *files,
                                    scan::classifyRule(*files), scan::ScanBackend::rule);
    auto reportB = scan::makeReport("repo07", "2025-01-22T00:00:00Z", *files,
                                    scan::classifyRule(*files), scan::ScanBackend::rule);
    require(scan::reportToJson(reportA) == scan::reportToJson(reportB),
            "scan report JSON changed between runs");

    // A CRLF checkout of the same repository scans to identical bytes.
    namespace fs = std::filesystem;
    auto crlfDir = fs::temp_directory_path() / "divcard_acceptance_crlf";
    fs::remove_all(crlfDir);
    auto srcDir = fs::path(testutil::fixturePath("corpus/repo07"));
    for (const auto& entry : fs::recursive_directory_iterator(srcDir)) {
        auto rel = fs::relative(entry.path(), srcDir);
        if (entry.is_directory()) {
            fs::create_directories(crlfDir / rel);
            continue;
        }
        std::string text = testutil::slurp(entry.path().string());
        std::string converted;
        for (char c : text) {
            if (c == '\n') converted += '\r';
            converted += c;
        }
        fs::create_directories((crlfDir / rel).parent_path());
        std::ofstream out(crlfDir / rel, std::ios::binary);
        out << converted;
    }
    auto crlfFiles = scan::collectLocal(crlfDir);
    require(crlfFiles.ok(), "CRLF corpus collection failed");
    auto crlfReport = scan::makeReport("repo07", "2025-01-22T00:00:00Z", *crlfFiles,
                                       scan::classifyRule(*crlfFiles), scan::ScanBackend::rule);
    require(scan::reportToJson(crlfReport) == scan::reportToJson(reportA),
            "scan report differs across line-ending environments");
}

void criterion5_scannerAgreement() {
    auto start = std::chrono::steady_clock::now();
    auto labels = nlohmann::json::parse(testutil::readFixture("corpus/labels.json"));
    int agree = 0, total = 0;
    std::string disagreements;
    for (const auto& [repo, areas] : labels["repos"].items()) {
        auto files = scan::collectLocal(testutil::fixturePath("corpus/" + repo));
        require(files.ok(), repo + " not collectable");
        for (const auto& finding : scan::classifyRule(*files)) {
            bool expected = areas[std::string(scan::toToken(finding.area))].get<bool>();
            ++total;
            if (finding.present == expected)
                ++agree;
            else
                disagreements += repo + "/" + std::string(scan::toToken(finding.area)) + " ";
        }
    }
    require(total == 100, "expected 20 repos x 5 areas");
    require(agree >= 90, "agreement " + std::to_string(agree) + "/100 below the 90 bar (" +
                             disagreements + ")");
    require(secondsSince(start) < 5.0, "scanner agreement must finish under 5 seconds");
    std::cerr << "  (scanner agreement: " << agree << "/100)\n";
}

void criterion6_fileNameMatcher() {
    using scan::FileCategory;
    require(scan::matchCommunityFile("coc.md") == FileCategory::codeOfConduct, "coc.md");
    require(scan::matchCommunityFile("code_of_conduct.txt") == FileCategory::codeOfConduct,
            "code_of_conduct.txt");
    require(scan::matchCommunityFile("CODE-OF-CONDUCT.adoc") == FileCategory::codeOfConduct,
            "CODE-OF-CONDUCT.adoc");
    struct Row {
        const char* name;
        FileCategory category;
    };
    static const Row kTable[] = {
        {"README.md", FileCategory::readme},
        {"readme", FileCategory::readme},
        {"ReadMe.rst", FileCategory::readme},
        {"README.txt", FileCategory::readme},
        {"read_me.md", FileCategory::readme},
        {"CONTRIBUTING.md", FileCategory::contributing},
        {"contributing.adoc", FileCategory::contributing},
        {"CONTRIBUTE.rst", FileCategory::contributing},
        {"CONTRIBUTORS.md", FileCategory::contributing},
        {"CODE_OF_CONDUCT.md", FileCategory::codeOfConduct},
        {"code-of-conduct.rst", FileCategory::codeOfConduct},
        {"CONDUCT.md", FileCategory::codeOfConduct},
        {"COC.txt", FileCategory::codeOfConduct},
        {"GOVERNANCE.md", FileCategory::governance},
        {"governance.adoc", FileCategory::governance},
        {"CODEOWNERS", FileCategory::codeowners},
        {"CodeOwners.md", FileCategory::codeowners},
        {"CODE_OWNERS", FileCategory::codeowners},
        {"COMMUNITY.md", FileCategory::community},
        {"community_guidelines.md", FileCategory::community},
        {"SUPPORT.md", FileCategory::support},
        {"support.txt", FileCategory::support},
        {"SECURITY.md", FileCategory::security},
        {"security.markdown", FileCategory::security},
        {"RELEASE.md", FileCategory::release},
        {"RELEASES.md", FileCategory::release},
        {"RELEASE_NOTES.md", FileCategory::release},
        {"CHANGELOG.md", FileCategory::release},
        {"FUNDING.yml", FileCategory::funding},
        {"SPONSORS.md", FileCategory::funding},
    };
    int cases = 0;
    for (const auto& row : kTable) {
        auto matched = scan::matchCommunityFile(row.name);
        require(matched.has_value() && *matched == row.category,
                std::string(row.name) + " did not resolve");
        ++cases;
    }
    require(cases == 30, "variant table must hold 30 cases");
    require(!scan::matchCommunityFile("main.py").has_value(), "main.py must not match");
}

void criterion7_completenessGrading() {
    auto besser = parseCard(testutil::readFixture("besser.divcard"), "besser.divcard");
    auto besserReport = completeness(besser.card);
    auto decidim = parseCard(testutil::readFixture("decidim.divcard"), "decidim.divcard");
    auto decidimReport = completeness(decidim.card);

    auto level = [](const CompletenessReport& report, Dimension d) {
        for (const auto& row : report.rows)
            if (row.dimension == d) return row.level;
        return CompletenessLevel::Missing;
    };
    require(level(besserReport, Dimension::developmentTeam) == CompletenessLevel::High,
            "Besser-style card: developmentTeam must grade High");
    require(level(decidimReport, Dimension::nonCodingContributors) == CompletenessLevel::Limited,
            "Decidim-style card: nonCodingContributors must grade Limited");
}

void criterion8_fuzzRobustness() {
    std::set<std::string> codes;
    for (const auto& info : diagnosticRegistry()) codes.insert(info.code);
    std::mt19937_64 rng(0xACCE55);
    std::uniform_int_distribution<int> lenDist(0, 300);
    std::uniform_int_distribution<int> byteDist(0, 255);
    for (int round = 0; round < 10000; ++round) {
        std::string input(size_t(lenDist(rng)), '\0');
        for (auto& c : input) c = char(byteDist(rng));
        auto result = parseCard(input, "fuzz");
        for (const auto& d : result.diagnostics)
            require(codes.count(d.code) == 1,
                    "round " + std::to_string(round) + " produced non-registry code " + d.code);
    }
}

void criterion9_remotePath() {
    using namespace divcard::remote;
    auto noSleep = [](std::chrono::milliseconds) {};

    auto okCassette = CassetteTransport::load(testutil::fixturePath("cassettes/collect_ok.json"));
    require(okCassette.ok(), "collect_ok cassette unreadable");
    PlatformClient okClient(*okCassette);
    okClient.setSleeper(noSleep);
    auto collected = okClient.collectRemote("acme/widget");
    require(collected.ok(), "collectRemote failed: " + collected.error.message);
    auto local = scan::collectLocal(testutil::fixturePath("repo_a"));
    require(local.ok() && *collected == *local,
            "remote collection must match the checked-out copy");

    auto limitedCassette =
        CassetteTransport::load(testutil::fixturePath("cassettes/rate_limit_recover.json"));
    require(limitedCassette.ok(), "rate limit cassette unreadable");
    std::vector<std::chrono::milliseconds> sleeps;
    PlatformClient limitedClient(*limitedCassette);
    limitedClient.setSleeper([&](std::chrono::milliseconds d) { sleeps.push_back(d); });
    auto limited = limitedClient.collectRemote("acme/limited");
    require(limited.ok(), "rate-limited collection should recover: " + limited.error.message);
    require(sleeps.size() == 2 && sleeps[0] == std::chrono::milliseconds(1000) &&
                sleeps[1] == std::chrono::milliseconds(2000),
            "backoff must double from a one-second base");

    auto exhaustCassette =
        CassetteTransport::load(testutil::fixturePath("cassettes/rate_limit_exhaust.json"));
    PlatformClient exhaustClient(*exhaustCassette);
    exhaustClient.setSleeper(noSleep);
    auto exhausted = exhaustClient.collectRemote("acme/stuck");
    require(!exhausted.ok() && exhausted.error.code == RATE_LIMITED,
            "persistent 403 must surface RATE_LIMITED");

    auto searchCassette =
        CassetteTransport::load(testutil::fixturePath("cassettes/search_repos.json"));
    PlatformClient searchClient(*searchCassette);
    searchClient.setSleeper(noSleep);
    searchClient.setClock([] {
        std::tm tm{};
        tm.tm_year = 2025 - 1900;
        tm.tm_mon = 0;
        tm.tm_mday = 22;
        return std::chrono::system_clock::from_time_t(timegm(&tm));
    });
    RepoSelector selector;
    selector.language = "python";
    selector.topN = 2;
    auto repos = searchClient.selectTopRepos(selector);
    require(repos.ok(), "selectTopRepos failed: " + repos.error.message);
    require(repos->size() == 2 && (*repos)[0] == "alpha/one" && (*repos)[1] == "gamma/three",
            "star order with the idle repository dropped");
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "fixture fidelity (published excerpts parse and carry their values)",
         criterion1_fixtureFidelity},
        {2, "mutation suite covers every registry code", criterion2_mutationSuite},
        {3, "round-trip properties (format fixpoint, JSON identity on 500 cards)",
         criterion3_roundTrips},
        {4, "deterministic emitters across runs and line-ending environments",
         criterion4_determinism},
        {5, "rule scanner agrees with the hand-labeled corpus (>= 90/100)",
         criterion5_scannerAgreement},
        {6, "file-name matcher resolves the documented variants", criterion6_fileNameMatcher},
        {7, "completeness grading matches the reference cards", criterion7_completenessGrading},
        {8, "parser survives 10,000 random byte strings", criterion8_fuzzRobustness},
        {9, "remote path passes recorded cassettes incl. rate-limit backoff",
         criterion9_remotePath},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            criterion.run();
            std::cout << "PASS criterion " << criterion.number << ": " << criterion.title
                      << "\n";
        } catch (const Failure& f) {
            ++failures;
            std::cout << "FAIL criterion " << criterion.number << ": " << criterion.title
                      << " -- " << f.reason << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL criterion " << criterion.number << ": " << criterion.title
                      << " -- unexpected exception: " << e.what() << "\n";
        }
    }
    return failures;
}
