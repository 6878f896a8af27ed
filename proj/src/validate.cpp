#include "divcard/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "divcard/codes.hpp"

namespace divcard {

namespace {

enum class ElementKind {
    team,
    participant,
    organization,
    useCase,
    socialContext,
    targetCommunity,
    adaptation,
    body,
    rule,
    funder,
};

const char* kindName(ElementKind k) {
    switch (k) {
    case ElementKind::team: return "team";
    case ElementKind::participant: return "participant";
    case ElementKind::organization: return "organization";
    case ElementKind::useCase: return "use case";
    case ElementKind::socialContext: return "social context";
    case ElementKind::targetCommunity: return "target community";
    case ElementKind::adaptation: return "adaptation";
    case ElementKind::body: return "body";
    case ElementKind::rule: return "rule";
    case ElementKind::funder: return "funder";
    }
    return "";
}

struct Checker {
    const Card& card;
    std::vector<Diagnostic> out;
    std::map<std::string, ElementKind> ids; // first declaration wins

    explicit Checker(const Card& c) : card(c) {
        auto note = [&](const std::string& id, ElementKind kind) {
            if (!id.empty()) ids.emplace(id, kind);
        };
        for (const auto& e : c.teams) note(e.id, ElementKind::team);
        for (const auto& e : c.participants) note(e.id, ElementKind::participant);
        for (const auto& e : c.organizations) note(e.id, ElementKind::organization);
        for (const auto& e : c.useCases) note(e.id, ElementKind::useCase);
        for (const auto& e : c.socialContexts) note(e.id, ElementKind::socialContext);
        for (const auto& e : c.targetCommunities) note(e.id, ElementKind::targetCommunity);
        for (const auto& e : c.adaptations) note(e.id, ElementKind::adaptation);
        if (c.governance) {
            for (const auto& e : c.governance->bodies) note(e.id, ElementKind::body);
            for (const auto& e : c.governance->rules) note(e.id, ElementKind::rule);
            for (const auto& e : c.governance->funders) note(e.id, ElementKind::funder);
        }
    }

    void add(Severity sev, const char* code, std::string message, const SourceSpan& span) {
        out.push_back({sev, code, std::move(message), span});
    }
    void err(const char* code, std::string message, const SourceSpan& span) {
        add(Severity::error, code, std::move(message), span);
    }
    void warn(const char* code, std::string message, const SourceSpan& span) {
        add(Severity::warning, code, std::move(message), span);
    }

    // References must resolve to a declaration of an accepted kind; a ref
    // landing on the wrong kind is as dangling as one landing nowhere.
    void checkRef(const Ref& ref, std::initializer_list<ElementKind> accepted) {
        if (ref.id.empty()) return;
        // Excerpts elide declarations, so a dangling reference is only a hint.
        Severity sev = card.excerpt ? Severity::warning : Severity::error;
        auto it = ids.find(ref.id);
        if (it == ids.end()) {
            add(sev, diag::UNRESOLVED_REF,
                expectedKinds(accepted) + " reference '" + ref.id + "' has no declaration",
                ref.span);
            return;
        }
        if (std::find(accepted.begin(), accepted.end(), it->second) == accepted.end())
            add(sev, diag::UNRESOLVED_REF,
                expectedKinds(accepted) + " reference '" + ref.id + "' resolves to a " +
                    kindName(it->second),
                ref.span);
    }

    static std::string expectedKinds(std::initializer_list<ElementKind> accepted) {
        std::string out;
        for (ElementKind k : accepted) {
            if (!out.empty()) out += "/";
            out += kindName(k);
        }
        return out;
    }

    void checkDuplicates() {
        std::set<std::string> seen;
        auto visit = [&](const std::string& id, const SourceSpan& span) {
            if (id.empty()) return;
            if (!seen.insert(id).second)
                err(diag::DUPLICATE_ID, "id '" + id + "' already declared", span);
        };
        for (const auto& e : card.teams) visit(e.id, e.span);
        for (const auto& e : card.participants) visit(e.id, e.span);
        for (const auto& e : card.organizations) visit(e.id, e.span);
        for (const auto& e : card.useCases) visit(e.id, e.span);
        for (const auto& e : card.socialContexts) visit(e.id, e.span);
        for (const auto& e : card.targetCommunities) visit(e.id, e.span);
        for (const auto& e : card.adaptations) visit(e.id, e.span);
        if (card.governance) {
            for (const auto& e : card.governance->bodies) visit(e.id, e.span);
            for (const auto& e : card.governance->rules) visit(e.id, e.span);
            for (const auto& e : card.governance->funders) visit(e.id, e.span);
        }
    }

    void checkCountry(const CountryValue& c, const SourceSpan& span) {
        if (!c.code)
            err(diag::UNKNOWN_COUNTRY, "'" + c.raw + "' is not in the ISO 3166-1 table", span);
    }
    void checkLanguage(const LanguageValue& l, const SourceSpan& span) {
        if (!l.code)
            err(diag::UNKNOWN_LANGUAGE, "'" + l.raw + "' is not in the ISO 639 table", span);
    }

    void checkProfile(const GroupProfile& p, const std::string& owner, const SourceSpan& span) {
        if (p.ageRange) {
            const auto& r = *p.ageRange;
            if (r.minYears > r.maxYears || r.minYears < 0 || r.maxYears > 130)
                err(diag::RANGE_INVERTED,
                    "ageRange (" + std::to_string(r.minYears) + ", " +
                        std::to_string(r.maxYears) + ") of '" + owner +
                        "' must satisfy 0 <= min <= max <= 130",
                    span);
        }
        if (p.averageTenure && *p.averageTenure < 0)
            err(diag::NEGATIVE_TENURE, "averageTenure of '" + owner + "' is negative", span);
        for (const auto& c : p.countries) checkCountry(c, span);
        for (const auto& s : p.spokenLanguages) checkLanguage(s.language, span);
        checkDistribution(p.genders, owner, span);
    }

    void checkDistribution(const std::vector<DistributionEntry>& entries,
                           const std::string& owner, const SourceSpan& span) {
        if (entries.empty()) return;
        double sum = 0;
        bool any = false, all = true;
        for (const auto& e : entries) {
            if (e.percent) {
                sum += *e.percent;
                any = true;
            } else {
                all = false;
            }
        }
        if (!any) return;
        if (sum > 100.0 + 1e-9)
            warn(diag::DISTRIBUTION_SUM,
                 "genders of '" + owner + "' add up to more than 100%", span);
        else if (all && sum < 100.0 - 1e-9)
            warn(diag::DISTRIBUTION_SUM,
                 "genders of '" + owner + "' add up to less than 100%", span);
    }

    void checkTeam(const Team& t) {
        checkProfile(t.profile, t.id, t.span);
        std::set<std::string> distinct;
        for (const auto& m : t.members) {
            checkRef(m, {ElementKind::participant});
            distinct.insert(m.id);
        }
        if (t.teamSize && *t.teamSize < std::max<int>(1, int(distinct.size())))
            err(diag::TEAMSIZE_LT_MEMBERS,
                "teamSize " + std::to_string(*t.teamSize) + " of '" + t.id +
                    "' is below the listed membership",
                t.span);
        if (t.sourcing) {
            const auto& lf = *t.sourcing;
            if (lf.country) checkCountry(*lf.country, t.span);
            if (lf.sourcing == LabourSourcing::internal && !lf.company.empty() &&
                !companyIsOwnOrganization(lf.company))
                err(diag::INTERNAL_WITH_COMPANY,
                    "internal team '" + t.id + "' names outside company '" + lf.company + "'",
                    t.span);
        }
        checkKindDetail(t);
    }

    bool companyIsOwnOrganization(const std::string& company) const {
        auto sameText = [](std::string_view a, std::string_view b) {
            if (a.size() != b.size()) return false;
            for (size_t k = 0; k < a.size(); ++k)
                if (std::tolower((unsigned char)a[k]) != std::tolower((unsigned char)b[k]))
                    return false;
            return true;
        };
        for (const auto& o : card.organizations)
            if (sameText(o.name, company) || sameText(o.id, company)) return true;
        return false;
    }

    void checkKindDetail(const Team& t) {
        auto misplaced = [&](const char* field, std::initializer_list<TeamKind> allowed) {
            if (std::find(allowed.begin(), allowed.end(), t.kind) != allowed.end()) return;
            err(diag::KIND_DETAIL_MISMATCH,
                std::string("'") + field + "' does not apply to a " +
                    std::string(toToken(t.kind)) + " team ('" + t.id + "')",
                t.span);
        };
        if (t.testType) misplaced("testType", {TeamKind::tester});
        if (!t.platform.empty()) misplaced("platform", {TeamKind::tester});
        if (!t.taskDescription.empty()) misplaced("taskDescription", {TeamKind::tester});
        if (t.iterations) misplaced("iterations", {TeamKind::tester});
        if (t.durationHours) misplaced("durationHours", {TeamKind::tester});
        if (!t.reportingPlatforms.empty())
            misplaced("reportingPlatforms", {TeamKind::publicReporter});
        if (t.contributionCount)
            misplaced("contributionCount",
                      {TeamKind::publicReporter, TeamKind::nonCodingContributor});
        if (!t.contributorRoles.empty())
            misplaced("contributorRoles", {TeamKind::nonCodingContributor});
    }

    void checkParticipant(const Participant& p) {
        if (p.age && (*p.age < 0 || *p.age > 130))
            err(diag::RANGE_INVERTED, "age of '" + p.id + "' is outside [0, 130]", p.span);
        if (p.tenure && *p.tenure < 0)
            err(diag::NEGATIVE_TENURE, "tenure of '" + p.id + "' is negative", p.span);
        if (p.country) checkCountry(*p.country, p.span);
        for (const auto& s : p.spokenLanguages) checkLanguage(s.language, p.span);
        for (const auto& m : p.memberships) {
            checkRef(m.team, {ElementKind::team});
            if (m.startDate && m.endDate && *m.endDate < *m.startDate)
                err(diag::BAD_MEMBERSHIP_DATES,
                    "membership of '" + p.id + "' in '" + m.team.id + "' ends before it starts",
                    p.span);
        }
    }

    void run() {
        if (card.projectName.empty())
            warn(diag::EMPTY_PROJECT_NAME, "card has no project name", {});
        checkDuplicates();
        for (const auto& t : card.teams) checkTeam(t);
        for (const auto& p : card.participants) checkParticipant(p);
        for (const auto& o : card.organizations) checkProfile(o.profile, o.id, o.span);
        for (const auto& t : card.targetCommunities) checkProfile(t.profile, t.id, t.span);
        for (const auto& s : card.socialContexts)
            for (const auto& c : s.countries) checkCountry(c, s.span);
        for (const auto& s : card.socialContexts)
            for (const auto& l : s.spokenLanguages) checkLanguage(l.language, s.span);
        for (const auto& u : card.useCases) {
            for (const auto& r : u.targetCommunities) checkRef(r, {ElementKind::targetCommunity});
            if (u.socialContext) checkRef(*u.socialContext, {ElementKind::socialContext});
            if (u.description.empty())
                warn(diag::EMPTY_DESCRIPTION, "use case '" + u.id + "' has no description",
                     u.span);
        }
        for (const auto& a : card.adaptations) {
            for (const auto& r : a.targetCommunities) checkRef(r, {ElementKind::targetCommunity});
            for (const auto& r : a.relatedTeams) checkRef(r, {ElementKind::team});
            if (a.description.empty())
                warn(diag::EMPTY_DESCRIPTION, "adaptation '" + a.id + "' has no description",
                     a.span);
        }
        if (card.governance) {
            for (const auto& b : card.governance->bodies) {
                for (const auto& m : b.members) checkRef(m, {ElementKind::participant, ElementKind::organization});
                if (b.profile) checkProfile(*b.profile, b.id, b.span);
            }
        }
        std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
            if (a.span.startLine != b.span.startLine) return a.span.startLine < b.span.startLine;
            if (a.span.startCol != b.span.startCol) return a.span.startCol < b.span.startCol;
            return a.code < b.code;
        });
    }
};

} // namespace

ValidationReport validate(const Card& card) {
    Checker checker(card);
    checker.run();
    ValidationReport report;
    report.diagnostics = std::move(checker.out);
    report.resolved =
        std::none_of(report.diagnostics.begin(), report.diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
    return report;
}

// ---------------------------------------------------------------------------
// Privacy lint
// ---------------------------------------------------------------------------

std::vector<PrivacyFinding> lintPrivacy(const Card& card, int k) {
    std::vector<PrivacyFinding> findings;
    for (const auto& t : card.teams) {
        if (!t.teamSize || *t.teamSize >= k) continue;
        int sensitiveKinds = 0;
        std::string kinds;
        auto note = [&](const char* name) {
            ++sensitiveKinds;
            if (!kinds.empty()) kinds += ", ";
            kinds += name;
        };
        if (!t.profile.ethnicities.empty()) note("ethnicities");
        if (!t.profile.religiousBeliefs.empty()) note("religiousBeliefs");
        if (std::any_of(t.profile.genders.begin(), t.profile.genders.end(),
                        [](const DistributionEntry& g) { return g.percent.has_value(); }))
            note("genders with percentages");
        if (!t.profile.socioEconomicStati.empty()) note("socioEconomicStati");
        if (sensitiveKinds >= 2)
            findings.push_back({SMALL_GROUP_REIDENTIFICATION, t.id,
                                "team of " + std::to_string(*t.teamSize) + " (< " +
                                    std::to_string(k) + ") discloses " + kinds});
    }
    for (const auto& p : card.participants) {
        if (!p.ethnicity.empty())
            findings.push_back(
                {SINGLETON_ATTRIBUTE, p.id, "participant disclosed ethnicity directly"});
    }
    return findings;
}

// ---------------------------------------------------------------------------
// Completeness
// ---------------------------------------------------------------------------

std::string_view toToken(Dimension d) {
    switch (d) {
    case Dimension::developmentTeam: return "developmentTeam";
    case Dimension::nonCodingContributors: return "nonCodingContributors";
    case Dimension::testers: return "testers";
    case Dimension::reporters: return "reporters";
    case Dimension::targetCommunities: return "targetCommunities";
    case Dimension::governanceBoards: return "governanceBoards";
    case Dimension::governanceBodies: return "governanceBodies";
    }
    return "";
}

std::string_view toToken(CompletenessLevel level) {
    switch (level) {
    case CompletenessLevel::High: return "High";
    case CompletenessLevel::Limited: return "Limited";
    case CompletenessLevel::Missing: return "Missing";
    }
    return "";
}

namespace {

int populatedProfileFields(const GroupProfile& p) {
    int n = 0;
    n += !p.description.empty();
    n += p.ageRange.has_value();
    n += !p.locations.empty();
    n += !p.countries.empty();
    n += !p.ethnicities.empty();
    n += !p.genders.empty();
    n += !p.religiousBeliefs.empty();
    n += !p.educationalLevels.empty();
    n += !p.spokenLanguages.empty();
    n += !p.socioEconomicStati.empty();
    n += !p.skillLevels.empty();
    n += p.workplaceType.has_value();
    n += p.averageTenure.has_value();
    return n;
}
constexpr int kProfileFieldCount = 13;

// Per-kind optional-field inventories (profile + the kind's own fields).
struct Ratio {
    int populated = 0;
    int total = 0;
};

Ratio teamRatio(const Team& t) {
    Ratio r;
    r.populated = populatedProfileFields(t.profile) + t.teamSize.has_value();
    r.total = kProfileFieldCount + 1;
    switch (t.kind) {
    case TeamKind::development:
        break;
    case TeamKind::tester:
        r.populated += t.testType.has_value() + !t.platform.empty() +
                       !t.taskDescription.empty() + t.iterations.has_value() +
                       t.durationHours.has_value();
        r.total += 5;
        break;
    case TeamKind::publicReporter:
        r.populated += !t.reportingPlatforms.empty() + t.contributionCount.has_value();
        r.total += 2;
        break;
    case TeamKind::nonCodingContributor:
        r.populated += !t.contributorRoles.empty() + t.contributionCount.has_value();
        r.total += 2;
        break;
    }
    return r;
}

Ratio communityRatio(const TargetCommunity& c) {
    return {populatedProfileFields(c.profile) + !c.needs.empty(), kProfileFieldCount + 1};
}

Ratio bodyRatio(const Body& b) {
    Ratio r;
    r.populated = (b.profile ? populatedProfileFields(*b.profile) : 0) +
                  !b.decisionProcess.empty() + !b.members.empty();
    r.total = kProfileFieldCount + 2;
    return r;
}

} // namespace

CompletenessReport completeness(const Card& card, double highThreshold) {
    std::map<Dimension, std::vector<Ratio>> ratios;
    for (const auto& t : card.teams) {
        Dimension d = t.kind == TeamKind::development        ? Dimension::developmentTeam
                      : t.kind == TeamKind::tester           ? Dimension::testers
                      : t.kind == TeamKind::publicReporter   ? Dimension::reporters
                                                             : Dimension::nonCodingContributors;
        ratios[d].push_back(teamRatio(t));
    }
    for (const auto& c : card.targetCommunities)
        ratios[Dimension::targetCommunities].push_back(communityRatio(c));
    if (card.governance) {
        for (const auto& b : card.governance->bodies) {
            bool isBoard = b.type && b.type->kind == BodyType::board;
            ratios[isBoard ? Dimension::governanceBoards : Dimension::governanceBodies]
                .push_back(bodyRatio(b));
        }
    }

    CompletenessReport report;
    for (Dimension d :
         {Dimension::developmentTeam, Dimension::nonCodingContributors, Dimension::testers,
          Dimension::reporters, Dimension::targetCommunities, Dimension::governanceBoards,
          Dimension::governanceBodies}) {
        CompletenessRow row;
        row.dimension = d;
        auto it = ratios.find(d);
        if (it == ratios.end() || it->second.empty()) {
            row.populatedRatio = 0;
            row.level = CompletenessLevel::Missing;
            row.note = "no elements";
        } else {
            double sum = 0;
            int populated = 0, total = 0;
            for (const auto& r : it->second) {
                sum += double(r.populated) / double(r.total);
                populated += r.populated;
                total += r.total;
            }
            row.populatedRatio = sum / double(it->second.size());
            row.level = row.populatedRatio >= highThreshold ? CompletenessLevel::High
                        : row.populatedRatio > 0            ? CompletenessLevel::Limited
                                                            : CompletenessLevel::Missing;
            row.note = std::to_string(populated) + " of " + std::to_string(total) +
                       " fields populated across " + std::to_string(it->second.size()) +
                       (it->second.size() == 1 ? " element" : " elements");
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace divcard
