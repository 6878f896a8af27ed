#include "divcard/emit.hpp"

#include <json.hpp>

#include "divcard/validate.hpp"

namespace divcard {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

namespace {

Json codeJson(const CountryValue& c) {
    return Json{{"code", c.code.value_or(c.raw)}, {"displayName", c.displayName()}};
}
Json codeJson(const LanguageValue& l) {
    return Json{{"code", l.code.value_or(l.raw)}, {"displayName", l.displayName()}};
}

Json languageSkillJson(const LanguageSkill& s) {
    return Json{{"language", codeJson(s.language)},
                {"proficiency", std::string(toToken(s.proficiency))}};
}

template <typename T>
void putTypedEnum(Json& j, const char* key, const std::optional<T>& v) {
    if (!v) return;
    j[key] = std::string(toToken(v->kind));
    if (v->kind == T::other && !v->detail.empty()) j[std::string(key) + "Detail"] = v->detail;
}

void putStr(Json& j, const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
}
template <typename T>
void putOpt(Json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

Json profileJson(const GroupProfile& p) {
    Json j = Json::object();
    putStr(j, "description", p.description);
    if (p.ageRange)
        j["ageRange"] = Json{{"min", p.ageRange->minYears}, {"max", p.ageRange->maxYears}};
    if (!p.locations.empty()) j["locations"] = p.locations;
    if (!p.countries.empty()) {
        auto& arr = j["countries"] = Json::array();
        for (const auto& c : p.countries) arr.push_back(codeJson(c));
    }
    if (!p.ethnicities.empty()) j["ethnicities"] = p.ethnicities;
    if (!p.genders.empty()) {
        auto& arr = j["genders"] = Json::array();
        for (const auto& g : p.genders) {
            Json e{{"label", g.label}};
            putOpt(e, "percent", g.percent);
            arr.push_back(std::move(e));
        }
    }
    if (!p.religiousBeliefs.empty()) j["religiousBeliefs"] = p.religiousBeliefs;
    if (!p.educationalLevels.empty()) {
        auto& arr = j["educationalLevels"] = Json::array();
        for (auto v : p.educationalLevels) arr.push_back(std::string(toToken(v)));
    }
    if (!p.spokenLanguages.empty()) {
        auto& arr = j["spokenLanguages"] = Json::array();
        for (const auto& s : p.spokenLanguages) arr.push_back(languageSkillJson(s));
    }
    if (!p.socioEconomicStati.empty()) {
        auto& arr = j["socioEconomicStati"] = Json::array();
        for (auto v : p.socioEconomicStati) arr.push_back(std::string(toToken(v)));
    }
    if (!p.skillLevels.empty()) {
        auto& arr = j["skillLevels"] = Json::array();
        for (auto v : p.skillLevels) arr.push_back(std::string(toToken(v)));
    }
    if (p.workplaceType) j["workplaceType"] = std::string(toToken(*p.workplaceType));
    putOpt(j, "averageTenure", p.averageTenure);
    return j;
}

Json refsJson(const std::vector<Ref>& refs) {
    Json arr = Json::array();
    for (const auto& r : refs) arr.push_back(r.id);
    return arr;
}

Json teamJson(const Team& t) {
    Json j{{"id", t.id}, {"kind", std::string(toToken(t.kind))}};
    Json profile = profileJson(t.profile);
    if (!profile.empty()) j["profile"] = std::move(profile);
    putOpt(j, "teamSize", t.teamSize);
    if (t.startDate) j["startDate"] = t.startDate->toIso();
    if (!t.members.empty()) j["members"] = refsJson(t.members);
    if (t.sourcing) {
        Json lf = Json::object();
        if (t.sourcing->sourcing) lf["sourcing"] = std::string(toToken(*t.sourcing->sourcing));
        putStr(lf, "salary", t.sourcing->salary);
        putStr(lf, "labourRights", t.sourcing->labourRights);
        putStr(lf, "company", t.sourcing->company);
        if (t.sourcing->country) lf["country"] = codeJson(*t.sourcing->country);
        j["labourForce"] = std::move(lf);
    }
    if (t.testType) j["testType"] = std::string(toToken(*t.testType));
    putStr(j, "platform", t.platform);
    putStr(j, "taskDescription", t.taskDescription);
    putOpt(j, "iterations", t.iterations);
    putOpt(j, "durationHours", t.durationHours);
    if (!t.reportingPlatforms.empty()) j["reportingPlatforms"] = t.reportingPlatforms;
    putOpt(j, "contributionCount", t.contributionCount);
    if (!t.contributorRoles.empty()) {
        auto& arr = j["contributorRoles"] = Json::array();
        for (const auto& r : t.contributorRoles) {
            Json e{{"role", std::string(toToken(r.kind))}};
            if (r.kind == ContributorRole::other && !r.detail.empty()) e["detail"] = r.detail;
            arr.push_back(std::move(e));
        }
    }
    return j;
}

Json participantJson(const Participant& p) {
    Json j{{"id", p.id}};
    putStr(j, "name", p.name);
    if (!p.spokenLanguages.empty()) {
        auto& arr = j["spokenLanguages"] = Json::array();
        for (const auto& s : p.spokenLanguages) arr.push_back(languageSkillJson(s));
    }
    putStr(j, "ethnicity", p.ethnicity);
    putStr(j, "gender", p.gender);
    putOpt(j, "age", p.age);
    if (p.socioEconomicStatus)
        j["socioEconomicStatus"] = std::string(toToken(*p.socioEconomicStatus));
    if (p.skillLevel) j["skillLevel"] = std::string(toToken(*p.skillLevel));
    putOpt(j, "tenure", p.tenure);
    if (p.educationLevel) j["educationLevel"] = std::string(toToken(*p.educationLevel));
    if (p.country) j["country"] = codeJson(*p.country);
    putStr(j, "participantId", p.participantId);
    if (!p.memberships.empty()) {
        auto& arr = j["memberships"] = Json::array();
        for (const auto& m : p.memberships) {
            Json e{{"team", m.team.id}};
            putStr(e, "role", m.role);
            if (m.startDate) e["startDate"] = m.startDate->toIso();
            if (m.endDate) e["endDate"] = m.endDate->toIso();
            arr.push_back(std::move(e));
        }
    }
    return j;
}

Json cardJson(const Card& card) {
    Json root;
    root["schemaVersion"] = kJsonSchemaVersion;
    Json project{{"name", card.projectName}};
    putStr(project, "description", card.description);
    root["project"] = std::move(project);

    Json participants = Json::object();
    {
        auto& arr = participants["teams"] = Json::array();
        for (const auto& t : card.teams) arr.push_back(teamJson(t));
    }
    {
        auto& arr = participants["participants"] = Json::array();
        for (const auto& p : card.participants) arr.push_back(participantJson(p));
    }
    {
        auto& arr = participants["organizations"] = Json::array();
        for (const auto& o : card.organizations) {
            Json j{{"id", o.id}};
            putStr(j, "name", o.name);
            putTypedEnum(j, "type", o.type);
            Json profile = profileJson(o.profile);
            if (!profile.empty()) j["profile"] = std::move(profile);
            arr.push_back(std::move(j));
        }
    }
    root["participants"] = std::move(participants);

    Json usage = Json::object();
    {
        auto& arr = usage["targetCommunities"] = Json::array();
        for (const auto& t : card.targetCommunities) {
            Json j{{"id", t.id}};
            Json profile = profileJson(t.profile);
            if (!profile.empty()) j["profile"] = std::move(profile);
            putStr(j, "needs", t.needs);
            arr.push_back(std::move(j));
        }
    }
    {
        auto& arr = usage["socialContexts"] = Json::array();
        for (const auto& s : card.socialContexts) {
            Json j{{"id", s.id}};
            putStr(j, "description", s.description);
            if (!s.spokenLanguages.empty()) {
                auto& langs = j["spokenLanguages"] = Json::array();
                for (const auto& l : s.spokenLanguages) langs.push_back(languageSkillJson(l));
            }
            if (!s.culturalTraits.empty()) j["culturalTraits"] = s.culturalTraits;
            if (!s.countries.empty()) {
                auto& cs = j["countries"] = Json::array();
                for (const auto& c : s.countries) cs.push_back(codeJson(c));
            }
            arr.push_back(std::move(j));
        }
    }
    {
        auto& arr = usage["useCases"] = Json::array();
        for (const auto& u : card.useCases) {
            Json j{{"id", u.id}};
            putStr(j, "description", u.description);
            if (!u.targetCommunities.empty())
                j["targetCommunities"] = refsJson(u.targetCommunities);
            if (u.socialContext) j["socialContext"] = u.socialContext->id;
            arr.push_back(std::move(j));
        }
    }
    {
        auto& arr = usage["adaptations"] = Json::array();
        for (const auto& a : card.adaptations) {
            Json j{{"id", a.id}};
            putStr(j, "description", a.description);
            if (!a.targetCommunities.empty())
                j["targetCommunities"] = refsJson(a.targetCommunities);
            if (!a.relatedTeams.empty()) j["relatedTeams"] = refsJson(a.relatedTeams);
            putStr(j, "release", a.release);
            arr.push_back(std::move(j));
        }
    }
    root["usageContext"] = std::move(usage);

    if (card.governance && !card.governance->empty()) {
        const auto& g = *card.governance;
        Json gov = Json::object();
        {
            auto& arr = gov["bodies"] = Json::array();
            for (const auto& b : g.bodies) {
                Json j{{"id", b.id}};
                putStr(j, "name", b.name);
                putTypedEnum(j, "type", b.type);
                if (!b.members.empty()) j["members"] = refsJson(b.members);
                putStr(j, "decisionProcess", b.decisionProcess);
                if (b.profile) {
                    Json profile = profileJson(*b.profile);
                    if (!profile.empty()) j["profile"] = std::move(profile);
                }
                arr.push_back(std::move(j));
            }
        }
        {
            auto& arr = gov["rules"] = Json::array();
            for (const auto& r : g.rules) {
                Json j{{"id", r.id}};
                putStr(j, "text", r.text);
                putStr(j, "externalRef", r.externalRef);
                arr.push_back(std::move(j));
            }
        }
        {
            auto& arr = gov["funders"] = Json::array();
            for (const auto& f : g.funders) {
                Json j{{"id", f.id}};
                putStr(j, "name", f.name);
                putTypedEnum(j, "type", f.type);
                putStr(j, "description", f.description);
                arr.push_back(std::move(j));
            }
        }
        if (!g.shareholders.empty()) gov["shareholders"] = g.shareholders;
        putStr(gov, "legalRegulation", g.legalRegulation);
        root["governance"] = std::move(gov);
    } else {
        root["governance"] = nullptr;
    }
    return root;
}

Result<std::string> requireResolved(const Card& card) {
    auto report = validate(card);
    if (report.resolved) return Result<std::string>::success({});
    std::string detail;
    for (const auto& d : report.diagnostics) {
        if (d.severity != Severity::error) continue;
        if (!detail.empty()) detail += "; ";
        detail += d.code + ": " + d.message;
        if (detail.size() > 240) break;
    }
    return Result<std::string>::failure(EMIT_UNRESOLVED,
                                        "card does not validate cleanly (" + detail + ")");
}

} // namespace

Result<std::string> emitJson(const Card& card) {
    if (auto gate = requireResolved(card); !gate.ok())
        return Result<std::string>::failure(gate.error.code, gate.error.message);
    return Result<std::string>::success(cardJson(card).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// JSON import
// ---------------------------------------------------------------------------

namespace {

struct ImportFail {
    std::string path;
    std::string what;
};

struct Loc {
    const Json& node;
    std::string path;

    Loc at(const char* key) const {
        if (!node.is_object() || !node.contains(key))
            throw ImportFail{path + "." + key, "missing"};
        return {node.at(key), path + "." + key};
    }
    Loc at(size_t index) const {
        return {node.at(index), path + "[" + std::to_string(index) + "]"};
    }
    bool has(const char* key) const { return node.is_object() && node.contains(key); }

    std::string str() const {
        if (!node.is_string()) throw ImportFail{path, "expected a string"};
        return node.get<std::string>();
    }
    int integer() const {
        if (!node.is_number_integer()) throw ImportFail{path, "expected an integer"};
        return node.get<int>();
    }
    double number() const {
        if (!node.is_number()) throw ImportFail{path, "expected a number"};
        return node.get<double>();
    }
    void requireArray() const {
        if (!node.is_array()) throw ImportFail{path, "expected an array"};
    }
    void requireObject() const {
        if (!node.is_object()) throw ImportFail{path, "expected an object"};
    }
};

Date isoDate(const Loc& loc) {
    std::string s = loc.str();
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw ImportFail{loc.path, "expected YYYY-MM-DD"};
    Date d{std::stoi(s.substr(0, 4)), std::stoi(s.substr(5, 2)), std::stoi(s.substr(8, 2))};
    if (!d.ok()) throw ImportFail{loc.path, "not a calendar date"};
    return d;
}

CountryValue countryValue(const Loc& loc) {
    if (loc.node.is_string()) return CountryValue::of(loc.str());
    loc.requireObject();
    return CountryValue::of(loc.at("code").str());
}
LanguageValue languageValue(const Loc& loc) {
    if (loc.node.is_string()) return LanguageValue::of(loc.str());
    loc.requireObject();
    return LanguageValue::of(loc.at("code").str());
}

template <typename E>
E enumValue(const Loc& loc, std::optional<E> (*fromToken)(std::string_view)) {
    auto v = fromToken(loc.str());
    if (!v) throw ImportFail{loc.path, "unknown enum value '" + loc.str() + "'"};
    return *v;
}

template <typename T>
std::optional<T> typedEnumValue(const Loc& parent, const char* key,
                                std::optional<typename T::Kind> (*fromToken)(std::string_view)) {
    if (!parent.has(key)) return std::nullopt;
    T v;
    auto kind = fromToken(parent.at(key).str());
    if (!kind) throw ImportFail{parent.path + "." + key, "unknown enum value"};
    v.kind = *kind;
    std::string detailKey = std::string(key) + "Detail";
    if (parent.has(detailKey.c_str())) v.detail = parent.at(detailKey.c_str()).str();
    return v;
}

template <typename F>
void forEach(const Loc& arr, F f) {
    arr.requireArray();
    for (size_t k = 0; k < arr.node.size(); ++k) f(arr.at(k));
}

LanguageSkill languageSkill(const Loc& loc) {
    loc.requireObject();
    LanguageSkill s;
    s.language = languageValue(loc.at("language"));
    s.proficiency = enumValue(loc.at("proficiency"), proficiencyFromToken);
    return s;
}

GroupProfile profileValue(const Loc& loc) {
    loc.requireObject();
    GroupProfile p;
    if (loc.has("description")) p.description = loc.at("description").str();
    if (loc.has("ageRange")) {
        auto r = loc.at("ageRange");
        r.requireObject();
        p.ageRange = AgeRange{r.at("min").integer(), r.at("max").integer()};
    }
    if (loc.has("locations"))
        forEach(loc.at("locations"), [&](Loc e) { p.locations.push_back(e.str()); });
    if (loc.has("countries"))
        forEach(loc.at("countries"), [&](Loc e) { p.countries.push_back(countryValue(e)); });
    if (loc.has("ethnicities"))
        forEach(loc.at("ethnicities"), [&](Loc e) { p.ethnicities.push_back(e.str()); });
    if (loc.has("genders"))
        forEach(loc.at("genders"), [&](Loc e) {
            e.requireObject();
            DistributionEntry d;
            d.label = e.at("label").str();
            if (e.has("percent")) d.percent = e.at("percent").number();
            p.genders.push_back(std::move(d));
        });
    if (loc.has("religiousBeliefs"))
        forEach(loc.at("religiousBeliefs"), [&](Loc e) { p.religiousBeliefs.push_back(e.str()); });
    if (loc.has("educationalLevels"))
        forEach(loc.at("educationalLevels"), [&](Loc e) {
            p.educationalLevels.push_back(enumValue(e, educationLevelFromToken));
        });
    if (loc.has("spokenLanguages"))
        forEach(loc.at("spokenLanguages"),
                [&](Loc e) { p.spokenLanguages.push_back(languageSkill(e)); });
    if (loc.has("socioEconomicStati"))
        forEach(loc.at("socioEconomicStati"), [&](Loc e) {
            p.socioEconomicStati.push_back(enumValue(e, socioEconomicClassFromToken));
        });
    if (loc.has("skillLevels"))
        forEach(loc.at("skillLevels"),
                [&](Loc e) { p.skillLevels.push_back(enumValue(e, skillLevelFromToken)); });
    if (loc.has("workplaceType"))
        p.workplaceType = enumValue(loc.at("workplaceType"), workplaceTypeFromToken);
    if (loc.has("averageTenure")) p.averageTenure = loc.at("averageTenure").number();
    return p;
}

std::vector<Ref> refList(const Loc& arr) {
    std::vector<Ref> refs;
    forEach(arr, [&](Loc e) { refs.emplace_back(e.str()); });
    return refs;
}

Team teamValue(const Loc& loc) {
    loc.requireObject();
    Team t;
    t.id = loc.at("id").str();
    auto kind = teamKindFromToken(loc.at("kind").str());
    if (!kind) throw ImportFail{loc.path + ".kind", "unknown team kind"};
    t.kind = *kind;
    if (loc.has("profile")) t.profile = profileValue(loc.at("profile"));
    if (loc.has("teamSize")) t.teamSize = loc.at("teamSize").integer();
    if (loc.has("startDate")) t.startDate = isoDate(loc.at("startDate"));
    if (loc.has("members")) t.members = refList(loc.at("members"));
    if (loc.has("labourForce")) {
        auto lf = loc.at("labourForce");
        lf.requireObject();
        LabourForce labour;
        if (lf.has("sourcing"))
            labour.sourcing = enumValue(lf.at("sourcing"), labourSourcingFromToken);
        if (lf.has("salary")) labour.salary = lf.at("salary").str();
        if (lf.has("labourRights")) labour.labourRights = lf.at("labourRights").str();
        if (lf.has("company")) labour.company = lf.at("company").str();
        if (lf.has("country")) labour.country = countryValue(lf.at("country"));
        t.sourcing = std::move(labour);
    }
    if (loc.has("testType")) t.testType = enumValue(loc.at("testType"), testTypeFromToken);
    if (loc.has("platform")) t.platform = loc.at("platform").str();
    if (loc.has("taskDescription")) t.taskDescription = loc.at("taskDescription").str();
    if (loc.has("iterations")) t.iterations = loc.at("iterations").integer();
    if (loc.has("durationHours")) t.durationHours = loc.at("durationHours").number();
    if (loc.has("reportingPlatforms"))
        forEach(loc.at("reportingPlatforms"),
                [&](Loc e) { t.reportingPlatforms.push_back(e.str()); });
    if (loc.has("contributionCount")) t.contributionCount = loc.at("contributionCount").integer();
    if (loc.has("contributorRoles"))
        forEach(loc.at("contributorRoles"), [&](Loc e) {
            e.requireObject();
            ContributorRole r;
            r.kind = enumValue(e.at("role"), contributorRoleFromToken);
            if (e.has("detail")) r.detail = e.at("detail").str();
            t.contributorRoles.push_back(std::move(r));
        });
    return t;
}

Participant participantValue(const Loc& loc) {
    loc.requireObject();
    Participant p;
    p.id = loc.at("id").str();
    if (loc.has("name")) p.name = loc.at("name").str();
    if (loc.has("spokenLanguages"))
        forEach(loc.at("spokenLanguages"),
                [&](Loc e) { p.spokenLanguages.push_back(languageSkill(e)); });
    if (loc.has("ethnicity")) p.ethnicity = loc.at("ethnicity").str();
    if (loc.has("gender")) p.gender = loc.at("gender").str();
    if (loc.has("age")) p.age = loc.at("age").integer();
    if (loc.has("socioEconomicStatus"))
        p.socioEconomicStatus =
            enumValue(loc.at("socioEconomicStatus"), socioEconomicClassFromToken);
    if (loc.has("skillLevel")) p.skillLevel = enumValue(loc.at("skillLevel"), skillLevelFromToken);
    if (loc.has("tenure")) p.tenure = loc.at("tenure").number();
    if (loc.has("educationLevel"))
        p.educationLevel = enumValue(loc.at("educationLevel"), educationLevelFromToken);
    if (loc.has("country")) p.country = countryValue(loc.at("country"));
    if (loc.has("participantId")) p.participantId = loc.at("participantId").str();
    if (loc.has("memberships"))
        forEach(loc.at("memberships"), [&](Loc e) {
            e.requireObject();
            Membership m;
            m.team = Ref(e.at("team").str());
            if (e.has("role")) m.role = e.at("role").str();
            if (e.has("startDate")) m.startDate = isoDate(e.at("startDate"));
            if (e.has("endDate")) m.endDate = isoDate(e.at("endDate"));
            p.memberships.push_back(std::move(m));
        });
    return p;
}

} // namespace

Result<Card> importJson(std::string_view json) {
    Json root = Json::parse(json, nullptr, false);
    if (root.is_discarded())
        return Result<Card>::failure(JSON_SCHEMA_MISMATCH, "$: document is not valid JSON");
    try {
        Loc doc{root, "$"};
        doc.requireObject();
        if (!doc.has("schemaVersion"))
            throw ImportFail{"$.schemaVersion", "missing"};
        if (doc.at("schemaVersion").str() != kJsonSchemaVersion)
            throw ImportFail{"$.schemaVersion",
                             "unsupported version '" + doc.at("schemaVersion").str() + "'"};
        Card card;
        auto project = doc.at("project");
        project.requireObject();
        card.projectName = project.at("name").str();
        if (project.has("description")) card.description = project.at("description").str();

        if (doc.has("participants")) {
            auto parts = doc.at("participants");
            parts.requireObject();
            if (parts.has("teams"))
                forEach(parts.at("teams"),
                        [&](Loc e) { card.teams.push_back(teamValue(e)); });
            if (parts.has("participants"))
                forEach(parts.at("participants"),
                        [&](Loc e) { card.participants.push_back(participantValue(e)); });
            if (parts.has("organizations"))
                forEach(parts.at("organizations"), [&](Loc e) {
                    e.requireObject();
                    Organization o;
                    o.id = e.at("id").str();
                    if (e.has("name")) o.name = e.at("name").str();
                    o.type = typedEnumValue<OrgType>(e, "type", orgTypeFromToken);
                    if (e.has("profile")) o.profile = profileValue(e.at("profile"));
                    card.organizations.push_back(std::move(o));
                });
        }
        if (doc.has("usageContext")) {
            auto usage = doc.at("usageContext");
            usage.requireObject();
            if (usage.has("targetCommunities"))
                forEach(usage.at("targetCommunities"), [&](Loc e) {
                    e.requireObject();
                    TargetCommunity t;
                    t.id = e.at("id").str();
                    if (e.has("profile")) t.profile = profileValue(e.at("profile"));
                    if (e.has("needs")) t.needs = e.at("needs").str();
                    card.targetCommunities.push_back(std::move(t));
                });
            if (usage.has("socialContexts"))
                forEach(usage.at("socialContexts"), [&](Loc e) {
                    e.requireObject();
                    SocialContext s;
                    s.id = e.at("id").str();
                    if (e.has("description")) s.description = e.at("description").str();
                    if (e.has("spokenLanguages"))
                        forEach(e.at("spokenLanguages"),
                                [&](Loc l) { s.spokenLanguages.push_back(languageSkill(l)); });
                    if (e.has("culturalTraits"))
                        forEach(e.at("culturalTraits"),
                                [&](Loc l) { s.culturalTraits.push_back(l.str()); });
                    if (e.has("countries"))
                        forEach(e.at("countries"),
                                [&](Loc l) { s.countries.push_back(countryValue(l)); });
                    card.socialContexts.push_back(std::move(s));
                });
            if (usage.has("useCases"))
                forEach(usage.at("useCases"), [&](Loc e) {
                    e.requireObject();
                    UseCase u;
                    u.id = e.at("id").str();
                    if (e.has("description")) u.description = e.at("description").str();
                    if (e.has("targetCommunities"))
                        u.targetCommunities = refList(e.at("targetCommunities"));
                    if (e.has("socialContext")) u.socialContext = Ref(e.at("socialContext").str());
                    card.useCases.push_back(std::move(u));
                });
            if (usage.has("adaptations"))
                forEach(usage.at("adaptations"), [&](Loc e) {
                    e.requireObject();
                    Adaptation a;
                    a.id = e.at("id").str();
                    if (e.has("description")) a.description = e.at("description").str();
                    if (e.has("targetCommunities"))
                        a.targetCommunities = refList(e.at("targetCommunities"));
                    if (e.has("relatedTeams")) a.relatedTeams = refList(e.at("relatedTeams"));
                    if (e.has("release")) a.release = e.at("release").str();
                    card.adaptations.push_back(std::move(a));
                });
        }
        if (doc.has("governance") && !doc.at("governance").node.is_null()) {
            auto gov = doc.at("governance");
            gov.requireObject();
            Governance g;
            if (gov.has("bodies"))
                forEach(gov.at("bodies"), [&](Loc e) {
                    e.requireObject();
                    Body b;
                    b.id = e.at("id").str();
                    if (e.has("name")) b.name = e.at("name").str();
                    b.type = typedEnumValue<BodyType>(e, "type", bodyTypeFromToken);
                    if (e.has("members")) b.members = refList(e.at("members"));
                    if (e.has("decisionProcess"))
                        b.decisionProcess = e.at("decisionProcess").str();
                    if (e.has("profile")) b.profile = profileValue(e.at("profile"));
                    g.bodies.push_back(std::move(b));
                });
            if (gov.has("rules"))
                forEach(gov.at("rules"), [&](Loc e) {
                    e.requireObject();
                    GovernanceRule r;
                    r.id = e.at("id").str();
                    if (e.has("text")) r.text = e.at("text").str();
                    if (e.has("externalRef")) r.externalRef = e.at("externalRef").str();
                    g.rules.push_back(std::move(r));
                });
            if (gov.has("funders"))
                forEach(gov.at("funders"), [&](Loc e) {
                    e.requireObject();
                    Funder f;
                    f.id = e.at("id").str();
                    if (e.has("name")) f.name = e.at("name").str();
                    f.type = typedEnumValue<FunderType>(e, "type", funderTypeFromToken);
                    if (e.has("description")) f.description = e.at("description").str();
                    g.funders.push_back(std::move(f));
                });
            if (gov.has("shareholders"))
                forEach(gov.at("shareholders"),
                        [&](Loc e) { g.shareholders.push_back(e.str()); });
            if (gov.has("legalRegulation")) g.legalRegulation = gov.at("legalRegulation").str();
            if (!g.empty()) card.governance = std::move(g);
        }
        return Result<Card>::success(std::move(card));
    } catch (const ImportFail& f) {
        return Result<Card>::failure(JSON_SCHEMA_MISMATCH, f.path + ": " + f.what);
    } catch (const Json::exception& e) {
        return Result<Card>::failure(JSON_SCHEMA_MISMATCH, std::string("$: ") + e.what());
    }
}

} // namespace divcard
