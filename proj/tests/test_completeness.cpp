#include <doctest.h>

#include "divcard/parser.hpp"
#include "divcard/validate.hpp"
#include "support/cardgen.hpp"
#include "support/testutil.hpp"

using namespace divcard;

namespace {

const CompletenessRow& row(const CompletenessReport& report, Dimension d) {
    for (const auto& r : report.rows)
        if (r.dimension == d) return r;
    REQUIRE(false);
    return report.rows.front();
}

Card loadFixture(const char* name) {
    return parseCard(testutil::readFixture(name), name).card;
}

} // namespace

TEST_CASE("an empty card grades Missing on every dimension") {
    auto report = completeness(*newEmptyCard("X"));
    REQUIRE(report.rows.size() == 7);
    for (const auto& r : report.rows) {
        CHECK(r.level == CompletenessLevel::Missing);
        CHECK(r.populatedRatio == 0);
    }
}

TEST_CASE("the bundled Besser-style card grades the development team High") {
    auto report = completeness(loadFixture("besser.divcard"));
    const auto& dev = row(report, Dimension::developmentTeam);
    // Hand count of the fixture: 11 of 13 profile fields plus teamSize over
    // a 14-field inventory.
    CHECK(dev.populatedRatio == doctest::Approx(12.0 / 14.0));
    CHECK(dev.level == CompletenessLevel::High);
    CHECK(row(report, Dimension::testers).level == CompletenessLevel::High);
    CHECK(row(report, Dimension::nonCodingContributors).level == CompletenessLevel::Limited);
    CHECK(row(report, Dimension::reporters).level == CompletenessLevel::Limited);
}

TEST_CASE("the bundled Decidim-style card grades non-coding contributors Limited") {
    auto report = completeness(loadFixture("decidim.divcard"));
    const auto& nc = row(report, Dimension::nonCodingContributors);
    CHECK(nc.level == CompletenessLevel::Limited);
    CHECK(nc.populatedRatio == doctest::Approx(4.0 / 16.0));
    CHECK(row(report, Dimension::developmentTeam).level == CompletenessLevel::High);
    CHECK(row(report, Dimension::governanceBoards).level == CompletenessLevel::High);
    CHECK(row(report, Dimension::reporters).level == CompletenessLevel::Limited);
}

TEST_CASE("a reporter team with only a description grades Limited") {
    auto parsed = parseCard("publicReporterTeam r\n  description: \"only this\"\n", "r.divcard");
    auto report = completeness(parsed.card);
    const auto& reporters = row(report, Dimension::reporters);
    CHECK(reporters.level == CompletenessLevel::Limited);
    CHECK(reporters.populatedRatio > 0);
    CHECK(reporters.populatedRatio < kHighCompletenessThreshold);
}

TEST_CASE("levels map onto the threshold bands") {
    auto parsed = parseCard("developmentTeam bare\n", "bare.divcard");
    auto report = completeness(parsed.card);
    CHECK(row(report, Dimension::developmentTeam).level == CompletenessLevel::Missing);
    CHECK(row(report, Dimension::testers).level == CompletenessLevel::Missing);
}

TEST_CASE("boards and other bodies grade separately") {
    std::string source = "body b1\n  type: board\n  decisionProcess: \"votes\"\n"
                         "\nbody b2\n  type: publicAdministration\n";
    auto parsed = parseCard(source, "bodies.divcard");
    auto report = completeness(parsed.card);
    CHECK(row(report, Dimension::governanceBoards).level == CompletenessLevel::Limited);
    CHECK(row(report, Dimension::governanceBodies).level == CompletenessLevel::Missing);
}

TEST_CASE("adding a populated field never lowers any ratio") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        cardgen::Gen gen(seed);
        Card card = gen.card();
        auto before = completeness(card);
        // Populate one more field on every element that lacks it.
        for (auto& t : card.teams)
            if (!t.profile.averageTenure) t.profile.averageTenure = 1.0;
        for (auto& c : card.targetCommunities)
            if (c.needs.empty()) c.needs = "support";
        auto after = completeness(card);
        for (size_t k = 0; k < before.rows.size(); ++k)
            CHECK(after.rows[k].populatedRatio >= before.rows[k].populatedRatio);
    }
}
