#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divcard/diagnostics.hpp"

namespace divcard {

// ---------------------------------------------------------------------------
// Scalar domain types
// ---------------------------------------------------------------------------

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    bool ok() const; // valid calendar date, leap years included
    std::string toIso() const; // YYYY-MM-DD
    friend auto operator<=>(const Date&, const Date&) = default;
};

// A country token as written in the source ("Spain", "es", "ES") together
// with its resolution against the ISO 3166-1 table. Unresolved tokens are
// kept so the validator can report UNKNOWN_COUNTRY at the right place.
struct CountryValue {
    std::string raw;
    std::optional<std::string> code; // canonical alpha-2

    static CountryValue of(std::string token);
    std::string displayName() const; // English short name, or raw if unresolved
    friend bool operator==(const CountryValue& a, const CountryValue& b);
};

struct LanguageValue {
    std::string raw;
    std::optional<std::string> code; // canonical ISO 639-1

    static LanguageValue of(std::string token);
    std::string displayName() const; // hyphen-joined names, or raw if unresolved
    friend bool operator==(const LanguageValue& a, const LanguageValue& b);
};

enum class Proficiency { a1, a2, b1, b2, c1, c2 };
enum class EducationLevel {
    earlyChildhood,
    primary,
    lowerSecondary,
    upperSecondary,
    postSecondaryNonTertiary,
    shortCycleTertiary,
    bachelorEquivalent,
    masterEquivalent,
    doctorateEquivalent,
};
enum class SocioEconomicClass {
    lowerClass,
    lowerMiddleClass,
    middleClass,
    upperMiddleClass,
    upperClass,
};
enum class SkillLevel { beginner, intermediate, advanced, expert };
enum class WorkplaceType { presential, remote, hybrid };
enum class TeamKind { development, tester, publicReporter, nonCodingContributor };
enum class TestType { publicBeta, controlledBeta, crowdTesting };
enum class LabourSourcing { internal, external };

// Enum-with-escape-hatch: the fixed kinds plus other("free text").
struct ContributorRole {
    enum Kind { reporter, translator, documenter, reviewer, advocate, other };
    Kind kind = other;
    std::string detail; // set only for other
    friend bool operator==(const ContributorRole&, const ContributorRole&) = default;
};
struct OrgType {
    enum Kind { privateCompany, publicAdministration, ngo, researchInstitution, openCommunity, other };
    Kind kind = other;
    std::string detail;
    friend bool operator==(const OrgType&, const OrgType&) = default;
};
struct BodyType {
    enum Kind { board, privateCompany, corporation, publicAdministration, openCommunity, researchProject, other };
    Kind kind = other;
    std::string detail;
    friend bool operator==(const BodyType&, const BodyType&) = default;
};
struct FunderType {
    enum Kind { privateFunder, publicAdministration, ngo, crowdfunding, other };
    Kind kind = other;
    std::string detail;
    friend bool operator==(const FunderType&, const FunderType&) = default;
};

// Token <-> enum conversions. Tokens are the DSL spelling and double as the
// JSON spelling ("presential", "masterEquivalent", ...).
std::string_view toToken(Proficiency v);
std::string_view toToken(EducationLevel v);
std::string_view toToken(SocioEconomicClass v);
std::string_view toToken(SkillLevel v);
std::string_view toToken(WorkplaceType v);
std::string_view toToken(TeamKind v);
std::string_view toToken(TestType v);
std::string_view toToken(LabourSourcing v);
std::string_view toToken(ContributorRole::Kind v);
std::string_view toToken(OrgType::Kind v);
std::string_view toToken(BodyType::Kind v);
std::string_view toToken(FunderType::Kind v);

std::optional<Proficiency> proficiencyFromToken(std::string_view t);
std::optional<EducationLevel> educationLevelFromToken(std::string_view t);
std::optional<SocioEconomicClass> socioEconomicClassFromToken(std::string_view t);
std::optional<SkillLevel> skillLevelFromToken(std::string_view t);
std::optional<WorkplaceType> workplaceTypeFromToken(std::string_view t);
std::optional<TeamKind> teamKindFromToken(std::string_view t);
std::optional<TestType> testTypeFromToken(std::string_view t);
std::optional<LabourSourcing> labourSourcingFromToken(std::string_view t);
std::optional<ContributorRole::Kind> contributorRoleFromToken(std::string_view t);
std::optional<OrgType::Kind> orgTypeFromToken(std::string_view t);
std::optional<BodyType::Kind> bodyTypeFromToken(std::string_view t);
std::optional<FunderType::Kind> funderTypeFromToken(std::string_view t);

// ---------------------------------------------------------------------------
// Composite types
// ---------------------------------------------------------------------------

// An id reference, resolved against declarations by the validator. The span
// points at the reference site and is ignored by equality.
struct Ref {
    std::string id;
    SourceSpan span;

    Ref() = default;
    Ref(std::string refId) : id(std::move(refId)) {}
    friend bool operator==(const Ref& a, const Ref& b) { return a.id == b.id; }
};

// "male 80%" carries a percentage, "non-binary" does not.
struct DistributionEntry {
    std::string label;
    std::optional<double> percent;

    static DistributionEntry parse(std::string_view text); // splits a trailing N% suffix
    std::string toText() const;
    friend bool operator==(const DistributionEntry&, const DistributionEntry&) = default;
};

struct LanguageSkill {
    LanguageValue language;
    Proficiency proficiency = Proficiency::a1;
    friend bool operator==(const LanguageSkill&, const LanguageSkill&) = default;
};

struct AgeRange {
    int minYears = 0;
    int maxYears = 0;
    friend bool operator==(const AgeRange&, const AgeRange&) = default;
};

// Aggregated demographic and cultural attributes shared by all group kinds.
// An empty list means "not reported", never "none".
struct GroupProfile {
    std::string description;
    std::optional<AgeRange> ageRange;
    std::vector<std::string> locations;
    std::vector<CountryValue> countries;
    std::vector<std::string> ethnicities;
    std::vector<DistributionEntry> genders;
    std::vector<std::string> religiousBeliefs;
    std::vector<EducationLevel> educationalLevels;
    std::vector<LanguageSkill> spokenLanguages;
    std::vector<SocioEconomicClass> socioEconomicStati;
    std::vector<SkillLevel> skillLevels;
    std::optional<WorkplaceType> workplaceType;
    std::optional<double> averageTenure;

    bool empty() const;
    friend bool operator==(const GroupProfile&, const GroupProfile&) = default;
};

struct Membership {
    Ref team;
    std::string role;
    std::optional<Date> startDate;
    std::optional<Date> endDate;
    friend bool operator==(const Membership&, const Membership&) = default;
};

struct Participant {
    std::string id;
    std::string name;
    std::vector<LanguageSkill> spokenLanguages;
    std::string ethnicity;
    std::string gender;
    std::optional<int> age;
    std::optional<SocioEconomicClass> socioEconomicStatus;
    std::optional<SkillLevel> skillLevel;
    std::optional<double> tenure;
    std::optional<EducationLevel> educationLevel;
    std::optional<CountryValue> country;
    std::vector<Membership> memberships;
    std::string participantId; // internal participants only
    SourceSpan span;

    friend bool operator==(const Participant& a, const Participant& b);
};

struct LabourForce {
    std::optional<LabourSourcing> sourcing;
    std::string salary;
    std::string labourRights;
    std::string company;
    std::optional<CountryValue> country;
    friend bool operator==(const LabourForce&, const LabourForce&) = default;
};

// One flat record for all four team kinds; the kind-specific fields are
// only meaningful for their kind (KIND_DETAIL_MISMATCH otherwise), which
// keeps mismatched input representable and diagnosable.
struct Team {
    std::string id;
    TeamKind kind = TeamKind::development;
    GroupProfile profile;
    std::optional<int> teamSize;
    std::optional<Date> startDate;
    std::optional<LabourForce> sourcing;
    std::vector<Ref> members;
    // tester
    std::optional<TestType> testType;
    std::string platform;
    std::string taskDescription;
    std::optional<int> iterations;
    std::optional<double> durationHours;
    // publicReporter
    std::vector<std::string> reportingPlatforms;
    // publicReporter / nonCodingContributor
    std::optional<int> contributionCount;
    // nonCodingContributor
    std::vector<ContributorRole> contributorRoles;
    SourceSpan span;

    friend bool operator==(const Team& a, const Team& b);
};

struct Organization {
    std::string id;
    std::string name;
    GroupProfile profile;
    std::optional<OrgType> type;
    SourceSpan span;
    friend bool operator==(const Organization& a, const Organization& b);
};

struct TargetCommunity {
    std::string id;
    GroupProfile profile;
    std::string needs;
    SourceSpan span;
    friend bool operator==(const TargetCommunity& a, const TargetCommunity& b);
};

struct SocialContext {
    std::string id;
    std::string description;
    std::vector<LanguageSkill> spokenLanguages;
    std::vector<std::string> culturalTraits;
    std::vector<CountryValue> countries;
    SourceSpan span;
    friend bool operator==(const SocialContext& a, const SocialContext& b);
};

struct UseCase {
    std::string id;
    std::string description;
    std::vector<Ref> targetCommunities;
    std::optional<Ref> socialContext;
    SourceSpan span;
    friend bool operator==(const UseCase& a, const UseCase& b);
};

struct Adaptation {
    std::string id;
    std::string description;
    std::vector<Ref> targetCommunities;
    std::vector<Ref> relatedTeams;
    std::string release;
    SourceSpan span;
    friend bool operator==(const Adaptation& a, const Adaptation& b);
};

struct Body {
    std::string id;
    std::string name;
    std::optional<BodyType> type;
    std::vector<Ref> members; // participants and/or organizations
    std::string decisionProcess;
    std::optional<GroupProfile> profile;
    SourceSpan span;
    friend bool operator==(const Body& a, const Body& b);
};

struct GovernanceRule {
    std::string id;
    std::string text; // opaque external-DSL content, stored verbatim
    std::string externalRef;
    SourceSpan span;
    friend bool operator==(const GovernanceRule& a, const GovernanceRule& b);
};

struct Funder {
    std::string id;
    std::string name;
    std::optional<FunderType> type;
    std::string description;
    SourceSpan span;
    friend bool operator==(const Funder& a, const Funder& b);
};

struct Governance {
    std::vector<Body> bodies;
    std::vector<GovernanceRule> rules;
    std::vector<Funder> funders;
    std::vector<std::string> shareholders;
    std::string legalRegulation;

    bool empty() const;
    friend bool operator==(const Governance&, const Governance&) = default;
};

// ---------------------------------------------------------------------------
// Card
// ---------------------------------------------------------------------------

struct Card {
    std::string projectName;
    std::string description;
    std::vector<Team> teams;
    std::vector<Participant> participants;
    std::vector<Organization> organizations;
    std::vector<UseCase> useCases;
    std::vector<SocialContext> socialContexts;
    std::vector<TargetCommunity> targetCommunities;
    std::vector<Adaptation> adaptations;
    std::optional<Governance> governance;

    // Set by the parser when the source contained "..." elision markers
    // (published excerpts). Source metadata, not card content: ignored by
    // equality and not emitted.
    bool excerpt = false;

    bool containsId(std::string_view id) const;
    std::vector<std::string> allIds() const;

    // Insertion API for programmatic construction; rejects duplicate ids
    // (single flat namespace). Parsed documents may still carry duplicates,
    // which the validator reports as DUPLICATE_ID.
    bool addTeam(Team t);
    bool addParticipant(Participant p);
    bool addOrganization(Organization o);
    bool addUseCase(UseCase u);
    bool addSocialContext(SocialContext s);
    bool addTargetCommunity(TargetCommunity t);
    bool addAdaptation(Adaptation a);
    bool addBody(Body b);
    bool addRule(GovernanceRule r);
    bool addFunder(Funder f);

    friend bool operator==(const Card& a, const Card& b);
};

// Errors carried by Result-style returns (model and emitter operations).
struct Error {
    std::string code;
    std::string message;
};

template <typename T>
struct Result {
    std::optional<T> value;
    Error error;

    bool ok() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    T& operator*() { return *value; }
    const T* operator->() const { return &*value; }
    T* operator->() { return &*value; }

    static Result success(T v) { return Result{std::move(v), {}}; }
    static Result failure(std::string code, std::string message) {
        return Result{std::nullopt, Error{std::move(code), std::move(message)}};
    }
};

inline constexpr const char* EMPTY_NAME = "EMPTY_NAME";

Result<Card> newEmptyCard(std::string_view projectName);

} // namespace divcard
