#include <doctest.h>

#include <json.hpp>

#include "divcard/formatter.hpp"
#include "divcard/parser.hpp"
#include "divcard/scan.hpp"
#include "divcard/validate.hpp"
#include "support/testutil.hpp"

using namespace divcard;
using namespace divcard::scan;

namespace {

ScanReport reportWith(std::vector<AreaFinding> findings) {
    CommunityFileSet files;
    return makeReport("test/repo", "2025-01-22T00:00:00Z", files, std::move(findings),
                      ScanBackend::rule);
}

std::vector<AreaFinding> allAbsent() {
    std::vector<AreaFinding> findings;
    for (Area a : {Area::A1, Area::A2, Area::A3, Area::A4, Area::A5}) {
        AreaFinding f;
        f.area = a;
        for (auto key : areaSubKeys(a)) f.subfindings.emplace_back(std::string(key), false);
        findings.push_back(std::move(f));
    }
    return findings;
}

} // namespace

TEST_CASE("an all-absent report yields a header-only card") {
    Card card = skeletonCard(reportWith(allAbsent()), "Bare");
    CHECK(card.projectName == "Bare");
    CHECK(card.teams.empty());
    CHECK(card.targetCommunities.empty());
    CHECK(card.adaptations.empty());
    CHECK_FALSE(card.governance.has_value());
    std::string text = formatCard(card);
    CHECK(text.find("project \"Bare\"") == 0);
}

TEST_CASE("a funders-only report yields one funder stub under governance") {
    auto findings = allAbsent();
    auto& a5 = findings[4];
    a5.present = true;
    a5.subfindings = {{"funders", true}};
    a5.evidence.push_back({"README.md", {}, "Funded by the X Foundation."});
    Card card = skeletonCard(reportWith(std::move(findings)), "Funded");
    REQUIRE(card.governance.has_value());
    REQUIRE(card.governance->funders.size() == 1);
    CHECK(card.governance->funders.front().description.find("Funded by the X Foundation") !=
          std::string::npos);
    REQUIRE(card.governance->bodies.size() == 1); // A5 presence always stubs a body
    CHECK(card.teams.empty());
}

TEST_CASE("the corpus repo07 skeleton matches its label sheet") {
    auto labels = nlohmann::json::parse(testutil::readFixture("corpus/labels.json"));
    const auto& subs = labels["subfindings"]["repo07"];

    auto set = collectLocal(testutil::fixturePath("corpus/repo07"));
    REQUIRE(set.ok());
    auto report = makeReport("repo07", "2025-01-22T00:00:00Z", *set, classifyRule(*set),
                             ScanBackend::rule);

    // The classifier output itself must match the frozen sub-labels.
    for (const auto& f : report.findings) {
        for (const auto& [key, value] : f.subfindings) {
            bool expected = subs[std::string(toToken(f.area))][key].get<bool>();
            CHECK_MESSAGE(value == expected, toToken(f.area), ".", key);
        }
    }

    Card card = skeletonCard(report, "repo07");
    // A1 -> development team, A2 -> non-coding, A3 -> tester.
    REQUIRE(card.teams.size() == 3);
    CHECK(card.teams[0].kind == TeamKind::development);
    CHECK(card.teams[1].kind == TeamKind::nonCodingContributor);
    CHECK(card.teams[2].kind == TeamKind::tester);
    // A4 sub-findings -> community plus adaptation referencing it.
    REQUIRE(card.targetCommunities.size() == 1);
    REQUIRE(card.adaptations.size() == 1);
    REQUIRE(card.adaptations.front().targetCommunities.size() == 1);
    CHECK(card.adaptations.front().targetCommunities.front().id == card.targetCommunities[0].id);
    // A5 -> body and funder stubs.
    REQUIRE(card.governance.has_value());
    CHECK(card.governance->bodies.size() == 1);
    CHECK(card.governance->funders.size() == 1);

    // Every stub cites its evidence.
    for (const auto& t : card.teams)
        CHECK(t.profile.description.find("Evidence (") != std::string::npos);

    // The skeleton formats and validates with warnings only.
    std::string text = formatCard(card);
    auto reparsed = parseCard(text, "skeleton.divcard");
    for (const auto& d : reparsed.diagnostics) CHECK(d.severity == Severity::warning);
    auto validation = validate(reparsed.card);
    CHECK(validation.resolved);
}
