#include <string>
#include <vector>

#include "divcard/emit.hpp"
#include "divcard/validate.hpp"

namespace divcard {

// Markdown rendering: H1 title, H2 per card part, H3 per element, one field
// table per element with "not reported" for absent optionals.

namespace {

constexpr const char* kNotReported = "not reported";

std::string escapeCell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|')
            out += "\\|";
        else if (c == '\n')
            out += ' ';
        else
            out += c;
    }
    return out;
}

std::string joined(const std::vector<std::string>& items) {
    if (items.empty()) return kNotReported;
    std::string out;
    for (size_t k = 0; k < items.size(); ++k) {
        if (k) out += ", ";
        out += items[k];
    }
    return out;
}

std::string numberCell(double v) {
    std::string s = std::to_string(v);
    while (s.ends_with('0')) s.pop_back();
    if (s.ends_with('.')) s.pop_back();
    return s;
}

struct Doc {
    std::string out;
    bool tableOpen = false;

    void line(const std::string& s) {
        out += s;
        out += '\n';
    }
    void blank() { out += '\n'; }

    void h1(const std::string& s) { line("# " + s); }
    void h2(const std::string& s) {
        blank();
        line("## " + s);
    }
    void h3(const std::string& s) {
        blank();
        line("### " + s);
        blank();
        tableOpen = false;
    }

    void row(const std::string& field, const std::string& value) {
        if (!tableOpen) {
            line("| Field | Value |");
            line("| --- | --- |");
            tableOpen = true;
        }
        line("| " + escapeCell(field) + " | " + escapeCell(value) + " |");
    }
    void strRow(const std::string& field, const std::string& value) {
        row(field, value.empty() ? kNotReported : value);
    }
    template <typename T>
    void optRow(const std::string& field, const std::optional<T>& v,
                std::string (*render)(const T&)) {
        row(field, v ? render(*v) : kNotReported);
    }
};

std::string languageSkillCell(const LanguageSkill& s) {
    return s.language.displayName() + " (" + std::string(toToken(s.proficiency)) + ")";
}

template <typename T>
std::string typedEnumCell(const T& v) {
    std::string out(toToken(v.kind));
    if (v.kind == T::other && !v.detail.empty()) out += " (" + v.detail + ")";
    return out;
}

void profileRows(Doc& d, const GroupProfile& p) {
    d.strRow("description", p.description);
    d.row("age range", p.ageRange ? std::to_string(p.ageRange->minYears) + "–" +
                                        std::to_string(p.ageRange->maxYears)
                                  : kNotReported);
    d.row("locations", joined(p.locations));
    {
        std::vector<std::string> items;
        for (const auto& c : p.countries) items.push_back(c.displayName());
        d.row("countries", joined(items));
    }
    d.row("ethnicities", joined(p.ethnicities));
    {
        std::vector<std::string> items;
        for (const auto& g : p.genders) items.push_back(g.toText());
        d.row("genders", joined(items));
    }
    d.row("religious beliefs", joined(p.religiousBeliefs));
    {
        std::vector<std::string> items;
        for (auto v : p.educationalLevels) items.emplace_back(toToken(v));
        d.row("educational levels", joined(items));
    }
    {
        std::vector<std::string> items;
        for (const auto& s : p.spokenLanguages) items.push_back(languageSkillCell(s));
        d.row("spoken languages", joined(items));
    }
    {
        std::vector<std::string> items;
        for (auto v : p.socioEconomicStati) items.emplace_back(toToken(v));
        d.row("socio-economic classes", joined(items));
    }
    {
        std::vector<std::string> items;
        for (auto v : p.skillLevels) items.emplace_back(toToken(v));
        d.row("skill levels", joined(items));
    }
    d.row("workplace type",
          p.workplaceType ? std::string(toToken(*p.workplaceType)) : kNotReported);
    d.row("average tenure (years)",
          p.averageTenure ? numberCell(*p.averageTenure) : kNotReported);
}

std::string refsCell(const std::vector<Ref>& refs) {
    std::vector<std::string> items;
    for (const auto& r : refs) items.push_back(r.id);
    return joined(items);
}

const char* teamHeading(TeamKind kind) {
    switch (kind) {
    case TeamKind::development: return "development team";
    case TeamKind::tester: return "tester team";
    case TeamKind::publicReporter: return "public reporter team";
    case TeamKind::nonCodingContributor: return "non-coding contributor team";
    }
    return "";
}

void teamSection(Doc& d, const Team& t) {
    d.h3(t.id + " (" + teamHeading(t.kind) + ")");
    profileRows(d, t.profile);
    d.row("team size", t.teamSize ? std::to_string(*t.teamSize) : kNotReported);
    d.row("start date", t.startDate ? t.startDate->toIso() : kNotReported);
    d.row("members", refsCell(t.members));
    if (t.sourcing) {
        const auto& lf = *t.sourcing;
        d.row("sourcing",
              lf.sourcing ? std::string(toToken(*lf.sourcing)) : kNotReported);
        d.strRow("salary", lf.salary);
        d.strRow("labour rights", lf.labourRights);
        d.strRow("company", lf.company);
        d.row("labour country", lf.country ? lf.country->displayName() : kNotReported);
    } else {
        d.row("sourcing", kNotReported);
    }
    switch (t.kind) {
    case TeamKind::development:
        break;
    case TeamKind::tester:
        d.row("test type", t.testType ? std::string(toToken(*t.testType)) : kNotReported);
        d.strRow("platform", t.platform);
        d.strRow("task description", t.taskDescription);
        d.row("iterations", t.iterations ? std::to_string(*t.iterations) : kNotReported);
        d.row("duration (hours)",
              t.durationHours ? numberCell(*t.durationHours) : kNotReported);
        break;
    case TeamKind::publicReporter:
        d.row("reporting platforms", joined(t.reportingPlatforms));
        d.row("contributions",
              t.contributionCount ? std::to_string(*t.contributionCount) : kNotReported);
        break;
    case TeamKind::nonCodingContributor: {
        std::vector<std::string> roles;
        for (const auto& r : t.contributorRoles) roles.push_back(typedEnumCell(r));
        d.row("contributor roles", joined(roles));
        d.row("contributions",
              t.contributionCount ? std::to_string(*t.contributionCount) : kNotReported);
        break;
    }
    }
}

void participantSection(Doc& d, const Participant& p) {
    d.h3(p.id + " (participant)");
    d.strRow("name", p.name);
    {
        std::vector<std::string> items;
        for (const auto& s : p.spokenLanguages) items.push_back(languageSkillCell(s));
        d.row("spoken languages", joined(items));
    }
    d.strRow("ethnicity", p.ethnicity);
    d.strRow("gender", p.gender);
    d.row("age", p.age ? std::to_string(*p.age) : kNotReported);
    d.row("socio-economic class", p.socioEconomicStatus
                                      ? std::string(toToken(*p.socioEconomicStatus))
                                      : kNotReported);
    d.row("skill level",
          p.skillLevel ? std::string(toToken(*p.skillLevel)) : kNotReported);
    d.row("tenure (years)", p.tenure ? numberCell(*p.tenure) : kNotReported);
    d.row("education level",
          p.educationLevel ? std::string(toToken(*p.educationLevel)) : kNotReported);
    d.row("country", p.country ? p.country->displayName() : kNotReported);
    d.strRow("internal participant id", p.participantId);
    {
        std::vector<std::string> items;
        for (const auto& m : p.memberships) {
            std::string cell = m.team.id;
            if (!m.role.empty()) cell += " as " + m.role;
            if (m.startDate) cell += " from " + m.startDate->toIso();
            if (m.endDate) cell += " to " + m.endDate->toIso();
            items.push_back(std::move(cell));
        }
        d.row("memberships", joined(items));
    }
}

} // namespace

Result<std::string> emitMarkdown(const Card& card) {
    {
        auto report = validate(card);
        if (!report.resolved) {
            std::string detail;
            for (const auto& diag : report.diagnostics)
                if (diag.severity == Severity::error) {
                    detail = diag.code + ": " + diag.message;
                    break;
                }
            return Result<std::string>::failure(EMIT_UNRESOLVED,
                                                "card does not validate cleanly (" + detail + ")");
        }
    }

    Doc d;
    d.h1(card.projectName.empty() ? "Software Diversity Card" : card.projectName);
    if (!card.description.empty()) {
        d.blank();
        d.line(card.description);
    }

    d.h2("Participants");
    if (card.teams.empty() && card.participants.empty() && card.organizations.empty()) {
        d.blank();
        d.line(kNotReported);
    } else {
        for (const auto& t : card.teams) teamSection(d, t);
        for (const auto& p : card.participants) participantSection(d, p);
        for (const auto& o : card.organizations) {
            d.h3(o.id + " (organization)");
            d.strRow("name", o.name);
            d.row("type", o.type ? typedEnumCell(*o.type) : kNotReported);
            profileRows(d, o.profile);
        }
    }

    d.h2("Usage Context");
    if (card.targetCommunities.empty() && card.socialContexts.empty() && card.useCases.empty() &&
        card.adaptations.empty()) {
        d.blank();
        d.line(kNotReported);
    } else {
        for (const auto& t : card.targetCommunities) {
            d.h3(t.id + " (target community)");
            profileRows(d, t.profile);
            d.strRow("needs", t.needs);
        }
        for (const auto& s : card.socialContexts) {
            d.h3(s.id + " (social context)");
            d.strRow("description", s.description);
            {
                std::vector<std::string> items;
                for (const auto& l : s.spokenLanguages) items.push_back(languageSkillCell(l));
                d.row("spoken languages", joined(items));
            }
            d.row("cultural traits", joined(s.culturalTraits));
            {
                std::vector<std::string> items;
                for (const auto& c : s.countries) items.push_back(c.displayName());
                d.row("countries", joined(items));
            }
        }
        for (const auto& u : card.useCases) {
            d.h3(u.id + " (use case)");
            d.strRow("description", u.description);
            d.row("target communities", refsCell(u.targetCommunities));
            d.row("social context", u.socialContext ? u.socialContext->id : kNotReported);
        }
        for (const auto& a : card.adaptations) {
            d.h3(a.id + " (adaptation)");
            d.strRow("description", a.description);
            d.row("target communities", refsCell(a.targetCommunities));
            d.row("related teams", refsCell(a.relatedTeams));
            d.strRow("release", a.release);
        }
    }

    d.h2("Governance");
    if (!card.governance || card.governance->empty()) {
        d.blank();
        d.line(kNotReported);
    } else {
        const auto& g = *card.governance;
        for (const auto& b : g.bodies) {
            d.h3(b.id + " (governance body)");
            d.strRow("name", b.name);
            d.row("type", b.type ? typedEnumCell(*b.type) : kNotReported);
            d.row("members", refsCell(b.members));
            d.strRow("decision process", b.decisionProcess);
            if (b.profile) profileRows(d, *b.profile);
        }
        for (const auto& r : g.rules) {
            d.h3(r.id + " (rule)");
            d.strRow("text", r.text);
            d.strRow("external reference", r.externalRef);
        }
        for (const auto& f : g.funders) {
            d.h3(f.id + " (funder)");
            d.strRow("name", f.name);
            d.row("type", f.type ? typedEnumCell(*f.type) : kNotReported);
            d.strRow("description", f.description);
        }
        if (!g.shareholders.empty() || !g.legalRegulation.empty()) {
            d.h3("Project governance");
            d.row("shareholders", joined(g.shareholders));
            d.strRow("legal regulation", g.legalRegulation);
        }
    }
    return Result<std::string>::success(std::move(d.out));
}

} // namespace divcard
