#include "divcard/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "divcard/codes.hpp"

namespace divcard {

// ---------------------------------------------------------------------------
// Date
// ---------------------------------------------------------------------------

bool Date::ok() const {
    if (year < 1 || year > 9999) return false;
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                    std::chrono::day{unsigned(day)}};
    return ymd.ok();
}

std::string Date::toIso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

// ---------------------------------------------------------------------------
// Country / language values
// ---------------------------------------------------------------------------

namespace {
std::string lowerCopy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}
} // namespace

CountryValue CountryValue::of(std::string token) {
    CountryValue v;
    if (const auto* info = lookupCountry(token)) v.code = info->alpha2;
    v.raw = std::move(token);
    return v;
}

std::string CountryValue::displayName() const {
    if (code) {
        if (const auto* info = lookupCountry(*code)) return info->name;
    }
    return raw;
}

bool operator==(const CountryValue& a, const CountryValue& b) {
    if (a.code && b.code) return *a.code == *b.code;
    return lowerCopy(a.raw) == lowerCopy(b.raw);
}

LanguageValue LanguageValue::of(std::string token) {
    LanguageValue v;
    if (const auto* info = lookupLanguage(token)) v.code = info->code;
    v.raw = std::move(token);
    return v;
}

std::string LanguageValue::displayName() const {
    if (code) {
        if (const auto* info = lookupLanguage(*code)) return info->displayName();
    }
    return raw;
}

bool operator==(const LanguageValue& a, const LanguageValue& b) {
    if (a.code && b.code) return *a.code == *b.code;
    return lowerCopy(a.raw) == lowerCopy(b.raw);
}

// ---------------------------------------------------------------------------
// Enum tokens
// ---------------------------------------------------------------------------

namespace {
template <typename E, size_t N>
std::optional<E> fromTokenTable(const std::array<std::string_view, N>& table, std::string_view t) {
    for (size_t i = 0; i < N; ++i)
        if (table[i] == t) return static_cast<E>(i);
    return std::nullopt;
}

constexpr std::array<std::string_view, 6> kProficiency{"a1", "a2", "b1", "b2", "c1", "c2"};
constexpr std::array<std::string_view, 9> kEducation{
    "earlyChildhood",     "primary",        "lowerSecondary",
    "upperSecondary",     "postSecondaryNonTertiary", "shortCycleTertiary",
    "bachelorEquivalent", "masterEquivalent", "doctorateEquivalent"};
constexpr std::array<std::string_view, 5> kSes{"lowerClass", "lowerMiddleClass", "middleClass",
                                               "upperMiddleClass", "upperClass"};
constexpr std::array<std::string_view, 4> kSkill{"beginner", "intermediate", "advanced", "expert"};
constexpr std::array<std::string_view, 3> kWorkplace{"presential", "remote", "hybrid"};
constexpr std::array<std::string_view, 4> kTeamKind{"development", "tester", "publicReporter",
                                                    "nonCodingContributor"};
constexpr std::array<std::string_view, 3> kTestType{"publicBeta", "controlledBeta", "crowdTesting"};
constexpr std::array<std::string_view, 2> kSourcing{"internal", "external"};
constexpr std::array<std::string_view, 6> kContribRole{"reporter",  "translator", "documenter",
                                                       "reviewer",  "advocate",   "other"};
constexpr std::array<std::string_view, 6> kOrgType{"privateCompany", "publicAdministration",
                                                   "ngo",            "researchInstitution",
                                                   "openCommunity",  "other"};
constexpr std::array<std::string_view, 7> kBodyType{"board",          "privateCompany",
                                                    "corporation",    "publicAdministration",
                                                    "openCommunity",  "researchProject",
                                                    "other"};
constexpr std::array<std::string_view, 5> kFunderType{"private", "publicAdministration", "ngo",
                                                      "crowdfunding", "other"};
} // namespace

std::string_view toToken(Proficiency v) { return kProficiency[size_t(v)]; }
std::string_view toToken(EducationLevel v) { return kEducation[size_t(v)]; }
std::string_view toToken(SocioEconomicClass v) { return kSes[size_t(v)]; }
std::string_view toToken(SkillLevel v) { return kSkill[size_t(v)]; }
std::string_view toToken(WorkplaceType v) { return kWorkplace[size_t(v)]; }
std::string_view toToken(TeamKind v) { return kTeamKind[size_t(v)]; }
std::string_view toToken(TestType v) { return kTestType[size_t(v)]; }
std::string_view toToken(LabourSourcing v) { return kSourcing[size_t(v)]; }
std::string_view toToken(ContributorRole::Kind v) { return kContribRole[size_t(v)]; }
std::string_view toToken(OrgType::Kind v) { return kOrgType[size_t(v)]; }
std::string_view toToken(BodyType::Kind v) { return kBodyType[size_t(v)]; }
std::string_view toToken(FunderType::Kind v) { return kFunderType[size_t(v)]; }

std::optional<Proficiency> proficiencyFromToken(std::string_view t) {
    return fromTokenTable<Proficiency>(kProficiency, t);
}
std::optional<EducationLevel> educationLevelFromToken(std::string_view t) {
    return fromTokenTable<EducationLevel>(kEducation, t);
}
std::optional<SocioEconomicClass> socioEconomicClassFromToken(std::string_view t) {
    return fromTokenTable<SocioEconomicClass>(kSes, t);
}
std::optional<SkillLevel> skillLevelFromToken(std::string_view t) {
    return fromTokenTable<SkillLevel>(kSkill, t);
}
std::optional<WorkplaceType> workplaceTypeFromToken(std::string_view t) {
    return fromTokenTable<WorkplaceType>(kWorkplace, t);
}
std::optional<TeamKind> teamKindFromToken(std::string_view t) {
    return fromTokenTable<TeamKind>(kTeamKind, t);
}
std::optional<TestType> testTypeFromToken(std::string_view t) {
    return fromTokenTable<TestType>(kTestType, t);
}
std::optional<LabourSourcing> labourSourcingFromToken(std::string_view t) {
    return fromTokenTable<LabourSourcing>(kSourcing, t);
}
std::optional<ContributorRole::Kind> contributorRoleFromToken(std::string_view t) {
    return fromTokenTable<ContributorRole::Kind>(kContribRole, t);
}
std::optional<OrgType::Kind> orgTypeFromToken(std::string_view t) {
    return fromTokenTable<OrgType::Kind>(kOrgType, t);
}
std::optional<BodyType::Kind> bodyTypeFromToken(std::string_view t) {
    return fromTokenTable<BodyType::Kind>(kBodyType, t);
}
std::optional<FunderType::Kind> funderTypeFromToken(std::string_view t) {
    return fromTokenTable<FunderType::Kind>(kFunderType, t);
}

// ---------------------------------------------------------------------------
// DistributionEntry
// ---------------------------------------------------------------------------

DistributionEntry DistributionEntry::parse(std::string_view text) {
    DistributionEntry e;
    e.label = std::string(text);
    // Split a trailing "N%" / "N.N%" suffix into the percent field.
    if (text.empty() || text.back() != '%') return e;
    size_t digits = text.size() - 1;
    size_t start = digits;
    bool dotSeen = false;
    while (start > 0) {
        char c = text[start - 1];
        if (c >= '0' && c <= '9') {
            --start;
        } else if (c == '.' && !dotSeen) {
            dotSeen = true;
            --start;
        } else {
            break;
        }
    }
    if (start == digits) return e; // bare "%" with no digits
    std::string_view num = text.substr(start, digits - start);
    if (num.front() == '.' || num.back() == '.') return e;
    std::string label(text.substr(0, start));
    while (!label.empty() && label.back() == ' ') label.pop_back();
    if (label.empty()) return e; // "80%" alone stays a label
    double value = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || p != num.data() + num.size()) return e;
    if (value < 0 || value > 100) return e; // out-of-range suffix stays text
    e.label = std::move(label);
    e.percent = value;
    return e;
}

std::string DistributionEntry::toText() const {
    if (!percent) return label;
    char buf[64];
    double v = *percent;
    if (v == static_cast<long long>(v)) {
        std::snprintf(buf, sizeof buf, "%s %lld%%", label.c_str(), static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof buf, "%s %g%%", label.c_str(), v);
    }
    return buf;
}

// ---------------------------------------------------------------------------
// Structural equality (spans excluded)
// ---------------------------------------------------------------------------

bool GroupProfile::empty() const {
    return description.empty() && !ageRange && locations.empty() && countries.empty() &&
           ethnicities.empty() && genders.empty() && religiousBeliefs.empty() &&
           educationalLevels.empty() && spokenLanguages.empty() && socioEconomicStati.empty() &&
           skillLevels.empty() && !workplaceType && !averageTenure;
}

bool operator==(const Participant& a, const Participant& b) {
    return a.id == b.id && a.name == b.name && a.spokenLanguages == b.spokenLanguages &&
           a.ethnicity == b.ethnicity && a.gender == b.gender && a.age == b.age &&
           a.socioEconomicStatus == b.socioEconomicStatus && a.skillLevel == b.skillLevel &&
           a.tenure == b.tenure && a.educationLevel == b.educationLevel && a.country == b.country &&
           a.memberships == b.memberships && a.participantId == b.participantId;
}

bool operator==(const Team& a, const Team& b) {
    return a.id == b.id && a.kind == b.kind && a.profile == b.profile && a.teamSize == b.teamSize &&
           a.startDate == b.startDate && a.sourcing == b.sourcing && a.members == b.members &&
           a.testType == b.testType && a.platform == b.platform &&
           a.taskDescription == b.taskDescription && a.iterations == b.iterations &&
           a.durationHours == b.durationHours && a.reportingPlatforms == b.reportingPlatforms &&
           a.contributionCount == b.contributionCount && a.contributorRoles == b.contributorRoles;
}

bool operator==(const Organization& a, const Organization& b) {
    return a.id == b.id && a.name == b.name && a.profile == b.profile && a.type == b.type;
}

bool operator==(const TargetCommunity& a, const TargetCommunity& b) {
    return a.id == b.id && a.profile == b.profile && a.needs == b.needs;
}

bool operator==(const SocialContext& a, const SocialContext& b) {
    return a.id == b.id && a.description == b.description &&
           a.spokenLanguages == b.spokenLanguages && a.culturalTraits == b.culturalTraits &&
           a.countries == b.countries;
}

bool operator==(const UseCase& a, const UseCase& b) {
    return a.id == b.id && a.description == b.description &&
           a.targetCommunities == b.targetCommunities && a.socialContext == b.socialContext;
}

bool operator==(const Adaptation& a, const Adaptation& b) {
    return a.id == b.id && a.description == b.description &&
           a.targetCommunities == b.targetCommunities && a.relatedTeams == b.relatedTeams &&
           a.release == b.release;
}

bool operator==(const Body& a, const Body& b) {
    return a.id == b.id && a.name == b.name && a.type == b.type && a.members == b.members &&
           a.decisionProcess == b.decisionProcess && a.profile == b.profile;
}

bool operator==(const GovernanceRule& a, const GovernanceRule& b) {
    return a.id == b.id && a.text == b.text && a.externalRef == b.externalRef;
}

bool operator==(const Funder& a, const Funder& b) {
    return a.id == b.id && a.name == b.name && a.type == b.type && a.description == b.description;
}

bool Governance::empty() const {
    return bodies.empty() && rules.empty() && funders.empty() && shareholders.empty() &&
           legalRegulation.empty();
}

bool operator==(const Card& a, const Card& b) {
    // A fully empty governance section is equivalent to no section at all.
    auto gov = [](const Card& c) -> const Governance* {
        return c.governance && !c.governance->empty() ? &*c.governance : nullptr;
    };
    const Governance* ga = gov(a);
    const Governance* gb = gov(b);
    if ((ga == nullptr) != (gb == nullptr)) return false;
    if (ga && !(*ga == *gb)) return false;
    return a.projectName == b.projectName && a.description == b.description && a.teams == b.teams &&
           a.participants == b.participants && a.organizations == b.organizations &&
           a.useCases == b.useCases && a.socialContexts == b.socialContexts &&
           a.targetCommunities == b.targetCommunities && a.adaptations == b.adaptations;
}

// ---------------------------------------------------------------------------
// Card id namespace and insertion
// ---------------------------------------------------------------------------

std::vector<std::string> Card::allIds() const {
    std::vector<std::string> ids;
    for (const auto& e : teams) ids.push_back(e.id);
    for (const auto& e : participants) ids.push_back(e.id);
    for (const auto& e : organizations) ids.push_back(e.id);
    for (const auto& e : useCases) ids.push_back(e.id);
    for (const auto& e : socialContexts) ids.push_back(e.id);
    for (const auto& e : targetCommunities) ids.push_back(e.id);
    for (const auto& e : adaptations) ids.push_back(e.id);
    if (governance) {
        for (const auto& e : governance->bodies) ids.push_back(e.id);
        for (const auto& e : governance->rules) ids.push_back(e.id);
        for (const auto& e : governance->funders) ids.push_back(e.id);
    }
    return ids;
}

bool Card::containsId(std::string_view id) const {
    auto ids = allIds();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool Card::addTeam(Team t) {
    if (t.id.empty() || containsId(t.id)) return false;
    teams.push_back(std::move(t));
    return true;
}
bool Card::addParticipant(Participant p) {
    if (p.id.empty() || containsId(p.id)) return false;
    participants.push_back(std::move(p));
    return true;
}
bool Card::addOrganization(Organization o) {
    if (o.id.empty() || containsId(o.id)) return false;
    organizations.push_back(std::move(o));
    return true;
}
bool Card::addUseCase(UseCase u) {
    if (u.id.empty() || containsId(u.id)) return false;
    useCases.push_back(std::move(u));
    return true;
}
bool Card::addSocialContext(SocialContext s) {
    if (s.id.empty() || containsId(s.id)) return false;
    socialContexts.push_back(std::move(s));
    return true;
}
bool Card::addTargetCommunity(TargetCommunity t) {
    if (t.id.empty() || containsId(t.id)) return false;
    targetCommunities.push_back(std::move(t));
    return true;
}
bool Card::addAdaptation(Adaptation a) {
    if (a.id.empty() || containsId(a.id)) return false;
    adaptations.push_back(std::move(a));
    return true;
}
bool Card::addBody(Body b) {
    if (b.id.empty() || containsId(b.id)) return false;
    if (!governance) governance.emplace();
    governance->bodies.push_back(std::move(b));
    return true;
}
bool Card::addRule(GovernanceRule r) {
    if (r.id.empty() || containsId(r.id)) return false;
    if (!governance) governance.emplace();
    governance->rules.push_back(std::move(r));
    return true;
}
bool Card::addFunder(Funder f) {
    if (f.id.empty() || containsId(f.id)) return false;
    if (!governance) governance.emplace();
    governance->funders.push_back(std::move(f));
    return true;
}

Result<Card> newEmptyCard(std::string_view projectName) {
    size_t b = projectName.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return Result<Card>::failure(EMPTY_NAME, "project name must not be blank");
    size_t e = projectName.find_last_not_of(" \t\r\n");
    Card card;
    card.projectName = std::string(projectName.substr(b, e - b + 1));
    return Result<Card>::success(std::move(card));
}

} // namespace divcard
