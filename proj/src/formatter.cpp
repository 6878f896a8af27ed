#include "divcard/formatter.hpp"

#include <charconv>
#include <cstdio>

namespace divcard {

namespace {

constexpr size_t kInlineArrayLimit = 60;

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string numberText(double v) {
    if (v == static_cast<long long>(v) && v > -1e15 && v < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v); // shortest round-trip
    return std::string(buf, p);
}

std::string dateText(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d-%02d-%04d", d.day, d.month, d.year);
    return buf;
}

// Bare when the raw token lexes as a single word, quoted otherwise.
std::string codeToken(const std::string& raw) {
    bool plain = !raw.empty() && (std::isalpha(static_cast<unsigned char>(raw[0])) || raw[0] == '_');
    if (plain)
        for (char c : raw)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\''))
                plain = false;
    return plain ? raw : quoted(raw);
}

template <typename T>
std::string typedEnumText(const T& v) {
    std::string out(toToken(v.kind));
    if (v.kind == T::other && !v.detail.empty()) out += "(" + quoted(v.detail) + ")";
    return out;
}

struct Writer {
    std::string out;

    void line(std::string_view text) {
        out += text;
        out += '\n';
    }
    void blank() {
        if (!out.empty() && !out.ends_with("\n\n")) out += '\n';
    }

    void field(const std::string& name, const std::string& value) {
        line("  " + name + ": " + value);
    }

    void arrayField(const std::string& name, const std::vector<std::string>& items) {
        if (items.empty()) return;
        std::string inlineText = "[";
        for (size_t k = 0; k < items.size(); ++k) {
            if (k) inlineText += ", ";
            inlineText += items[k];
        }
        inlineText += "]";
        if (inlineText.size() <= kInlineArrayLimit) {
            field(name, inlineText);
            return;
        }
        line("  " + name + ": [");
        for (size_t k = 0; k < items.size(); ++k)
            line("    " + items[k] + (k + 1 < items.size() ? "," : ""));
        line("  ]");
    }

    void strField(const std::string& name, const std::string& value) {
        if (!value.empty()) field(name, quoted(value));
    }
    void strArray(const std::string& name, const std::vector<std::string>& values) {
        std::vector<std::string> items;
        items.reserve(values.size());
        for (const auto& v : values) items.push_back(quoted(v));
        arrayField(name, items);
    }
};

std::string languageSkillText(const LanguageSkill& s) {
    return "(" + codeToken(s.language.raw) + ", " + std::string(toToken(s.proficiency)) + ")";
}

void writeProfile(Writer& w, const GroupProfile& p) {
    w.strField("description", p.description);
    if (p.ageRange)
        w.field("ageRange", "(" + std::to_string(p.ageRange->minYears) + ", " +
                                std::to_string(p.ageRange->maxYears) + ")");
    w.strArray("locations", p.locations);
    {
        std::vector<std::string> items;
        for (const auto& c : p.countries) items.push_back(codeToken(c.raw));
        w.arrayField("countries", items);
    }
    w.strArray("ethnicities", p.ethnicities);
    {
        std::vector<std::string> items;
        for (const auto& g : p.genders) items.push_back(quoted(g.toText()));
        w.arrayField("genders", items);
    }
    w.strArray("religiousBeliefs", p.religiousBeliefs);
    {
        std::vector<std::string> items;
        for (auto v : p.educationalLevels) items.emplace_back(toToken(v));
        w.arrayField("educationalLevels", items);
    }
    {
        std::vector<std::string> items;
        for (const auto& s : p.spokenLanguages) items.push_back(languageSkillText(s));
        w.arrayField("spokenLanguages", items);
    }
    {
        std::vector<std::string> items;
        for (auto v : p.socioEconomicStati) items.emplace_back(toToken(v));
        w.arrayField("socioEconomicStati", items);
    }
    {
        std::vector<std::string> items;
        for (auto v : p.skillLevels) items.emplace_back(toToken(v));
        w.arrayField("skillLevels", items);
    }
    if (p.workplaceType) w.field("workplaceType", std::string(toToken(*p.workplaceType)));
    if (p.averageTenure) w.field("averageTenure", numberText(*p.averageTenure));
}

void writeTeam(Writer& w, const Team& t) {
    w.blank();
    switch (t.kind) {
    case TeamKind::development: w.line("developmentTeam " + t.id); break;
    case TeamKind::tester: w.line("testerTeam " + t.id); break;
    case TeamKind::publicReporter: w.line("publicReporterTeam " + t.id); break;
    case TeamKind::nonCodingContributor: w.line("nonCodingContributorTeam " + t.id); break;
    }
    writeProfile(w, t.profile);
    if (t.teamSize) w.field("teamSize", std::to_string(*t.teamSize));
    if (t.startDate) w.field("startDate", dateText(*t.startDate));
    {
        std::vector<std::string> items;
        for (const auto& m : t.members) items.push_back(m.id);
        w.arrayField("members", items);
    }
    if (t.sourcing) {
        const auto& lf = *t.sourcing;
        if (lf.sourcing) w.field("sourcing", std::string(toToken(*lf.sourcing)));
        w.strField("salary", lf.salary);
        w.strField("labourRights", lf.labourRights);
        w.strField("company", lf.company);
        if (lf.country) w.field("country", codeToken(lf.country->raw));
    }
    if (t.testType) w.field("testType", std::string(toToken(*t.testType)));
    w.strField("platform", t.platform);
    w.strField("taskDescription", t.taskDescription);
    if (t.iterations) w.field("iterations", std::to_string(*t.iterations));
    if (t.durationHours) w.field("durationHours", numberText(*t.durationHours));
    w.strArray("reportingPlatforms", t.reportingPlatforms);
    if (t.contributionCount) w.field("contributionCount", std::to_string(*t.contributionCount));
    {
        std::vector<std::string> items;
        for (const auto& r : t.contributorRoles) items.push_back(typedEnumText(r));
        w.arrayField("contributorRoles", items);
    }
}

std::string membershipText(const Membership& m) {
    std::string out = "(" + m.team.id + ", " + quoted(m.role);
    if (m.startDate) out += ", " + dateText(*m.startDate);
    if (m.endDate) out += ", " + dateText(*m.endDate);
    out += ")";
    return out;
}

void writeParticipant(Writer& w, const Participant& p) {
    w.blank();
    w.line("participant " + p.id);
    w.strField("name", p.name);
    {
        std::vector<std::string> items;
        for (const auto& s : p.spokenLanguages) items.push_back(languageSkillText(s));
        w.arrayField("spokenLanguages", items);
    }
    w.strField("ethnicity", p.ethnicity);
    w.strField("gender", p.gender);
    if (p.age) w.field("age", std::to_string(*p.age));
    if (p.socioEconomicStatus)
        w.field("socioEconomicStatus", std::string(toToken(*p.socioEconomicStatus)));
    if (p.skillLevel) w.field("skillLevel", std::string(toToken(*p.skillLevel)));
    if (p.tenure) w.field("tenure", numberText(*p.tenure));
    if (p.educationLevel) w.field("educationLevel", std::string(toToken(*p.educationLevel)));
    if (p.country) w.field("country", codeToken(p.country->raw));
    w.strField("participantId", p.participantId);
    {
        std::vector<std::string> items;
        for (const auto& m : p.memberships) items.push_back(membershipText(m));
        w.arrayField("memberships", items);
    }
}

} // namespace

std::string formatCard(const Card& card) {
    Writer w;
    w.line("project " + quoted(card.projectName));
    w.strField("description", card.description);

    for (const auto& t : card.teams) writeTeam(w, t);
    for (const auto& p : card.participants) writeParticipant(w, p);
    for (const auto& o : card.organizations) {
        w.blank();
        w.line("organization " + o.id);
        w.strField("name", o.name);
        if (o.type) w.field("type", typedEnumText(*o.type));
        writeProfile(w, o.profile);
    }
    for (const auto& t : card.targetCommunities) {
        w.blank();
        w.line("targetCommunity " + t.id);
        writeProfile(w, t.profile);
        w.strField("needs", t.needs);
    }
    for (const auto& s : card.socialContexts) {
        w.blank();
        w.line("socialContext " + s.id);
        w.strField("description", s.description);
        {
            std::vector<std::string> items;
            for (const auto& l : s.spokenLanguages) items.push_back(languageSkillText(l));
            w.arrayField("spokenLanguages", items);
        }
        w.strArray("culturalTraits", s.culturalTraits);
        {
            std::vector<std::string> items;
            for (const auto& c : s.countries) items.push_back(codeToken(c.raw));
            w.arrayField("countries", items);
        }
    }
    for (const auto& u : card.useCases) {
        w.blank();
        w.line("useCase " + u.id);
        w.strField("description", u.description);
        {
            std::vector<std::string> items;
            for (const auto& r : u.targetCommunities) items.push_back(r.id);
            w.arrayField("targetCommunities", items);
        }
        if (u.socialContext) w.field("socialContext", u.socialContext->id);
    }
    for (const auto& a : card.adaptations) {
        w.blank();
        w.line("adaptation " + a.id);
        w.strField("description", a.description);
        {
            std::vector<std::string> items;
            for (const auto& r : a.targetCommunities) items.push_back(r.id);
            w.arrayField("targetCommunities", items);
        }
        {
            std::vector<std::string> items;
            for (const auto& r : a.relatedTeams) items.push_back(r.id);
            w.arrayField("relatedTeams", items);
        }
        w.strField("release", a.release);
    }
    if (card.governance) {
        const auto& g = *card.governance;
        if (!g.shareholders.empty() || !g.legalRegulation.empty()) {
            w.blank();
            w.line("governance");
            w.strArray("shareholders", g.shareholders);
            w.strField("legalRegulation", g.legalRegulation);
        }
        for (const auto& b : g.bodies) {
            w.blank();
            w.line("body " + b.id);
            w.strField("name", b.name);
            if (b.type) w.field("type", typedEnumText(*b.type));
            {
                std::vector<std::string> items;
                for (const auto& r : b.members) items.push_back(r.id);
                w.arrayField("members", items);
            }
            w.strField("decisionProcess", b.decisionProcess);
            if (b.profile) writeProfile(w, *b.profile);
        }
        for (const auto& r : g.rules) {
            w.blank();
            w.line("rule " + r.id);
            w.strField("text", r.text);
            w.strField("externalRef", r.externalRef);
        }
        for (const auto& f : g.funders) {
            w.blank();
            w.line("funder " + f.id);
            w.strField("name", f.name);
            if (f.type) w.field("type", typedEnumText(*f.type));
            w.strField("description", f.description);
        }
    }
    return w.out;
}

} // namespace divcard
