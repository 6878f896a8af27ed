#include "divcard/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>

namespace divcard {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    word,
    string,
    number,
    date,
    badDate,
    badNumber,
    lbracket,
    rbracket,
    lparen,
    rparen,
    comma,
    colon,
    ellipsis,
    badChar,
    eof,
};

struct Token {
    Tok kind = Tok::eof;
    std::string text;    // word spelling or decoded string content
    double number = 0;
    bool isInt = false;
    Date date;
    bool unterminated = false; // string auto-closed at end of line
    bool firstOnLine = false;
    SourceSpan span;
};

bool isWordStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool isWordChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
}
bool isDigit(char c) { return c >= '0' && c <= '9'; }

// A bare token that can be printed back without quoting.
bool isPlainWord(std::string_view s) {
    if (s.empty() || !isWordStart(s[0])) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return isWordChar(c); });
}

struct Lexer {
    std::string_view src;
    std::string file;
    size_t pos = 0;
    int line = 1;
    int col = 1;
    bool atLineStart = true;

    explicit Lexer(std::string_view source, std::string_view fileName)
        : src(source), file(fileName) {
        if (src.substr(0, 3) == "\xEF\xBB\xBF") advanceBytes(3); // BOM
    }

    void advanceBytes(size_t n) {
        for (size_t i = 0; i < n && pos < src.size(); ++i) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skipTrivia() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '\n') {
                atLineStart = true;
                advanceBytes(1);
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advanceBytes(1);
            } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
                while (pos < src.size() && src[pos] != '\n') advanceBytes(1);
            } else {
                break;
            }
        }
    }

    Token make(Tok kind, int startLine, int startCol) {
        Token t;
        t.kind = kind;
        t.span = {file, startLine, startCol, line, col > 1 ? col - 1 : col};
        return t;
    }

    Token next() {
        skipTrivia();
        bool first = atLineStart;
        atLineStart = false;
        int startLine = line, startCol = col;
        if (pos >= src.size()) {
            Token t = make(Tok::eof, startLine, startCol);
            t.firstOnLine = first;
            return t;
        }
        char c = src[pos];
        Token t;
        if (c == '.' && src.substr(pos, 3) == "...") {
            advanceBytes(3);
            t = make(Tok::ellipsis, startLine, startCol);
        } else if (c == '[') {
            advanceBytes(1);
            t = make(Tok::lbracket, startLine, startCol);
        } else if (c == ']') {
            advanceBytes(1);
            t = make(Tok::rbracket, startLine, startCol);
        } else if (c == '(') {
            advanceBytes(1);
            t = make(Tok::lparen, startLine, startCol);
        } else if (c == ')') {
            advanceBytes(1);
            t = make(Tok::rparen, startLine, startCol);
        } else if (c == ',') {
            advanceBytes(1);
            t = make(Tok::comma, startLine, startCol);
        } else if (c == ':') {
            advanceBytes(1);
            t = make(Tok::colon, startLine, startCol);
        } else if (c == '"') {
            t = lexString(startLine, startCol);
        } else if (isDigit(c) || (c == '-' && pos + 1 < src.size() && isDigit(src[pos + 1]))) {
            t = lexNumberish(startLine, startCol);
        } else if (isWordStart(c)) {
            size_t begin = pos;
            while (pos < src.size() && isWordChar(src[pos])) advanceBytes(1);
            t = make(Tok::word, startLine, startCol);
            t.text = std::string(src.substr(begin, pos - begin));
        } else {
            advanceBytes(1);
            t = make(Tok::badChar, startLine, startCol);
            t.text = std::string(1, c);
        }
        t.firstOnLine = first;
        return t;
    }

    Token lexString(int startLine, int startCol) {
        advanceBytes(1); // opening quote
        std::string out;
        bool closed = false;
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '\n') break; // strings are single-line
            if (c == '"') {
                advanceBytes(1);
                closed = true;
                break;
            }
            if (c == '\\' && pos + 1 < src.size() &&
                (src[pos + 1] == '"' || src[pos + 1] == '\\')) {
                out += src[pos + 1];
                advanceBytes(2);
                continue;
            }
            if (c != '\r') out += c;
            advanceBytes(1);
        }
        Token t = make(Tok::string, startLine, startCol);
        t.text = std::move(out);
        t.unterminated = !closed;
        return t;
    }

    // Digits, dots and dashes form one run, then get classified: a DD-MM-YYYY
    // date, a number, or a malformed one of the two.
    Token lexNumberish(int startLine, int startCol) {
        size_t begin = pos;
        if (src[pos] == '-') advanceBytes(1);
        while (pos < src.size() &&
               (isDigit(src[pos]) || src[pos] == '.' || src[pos] == '-')) {
            if (src[pos] == '.' && src.substr(pos, 3) == "...") break; // leave elision intact
            advanceBytes(1);
        }
        std::string text(src.substr(begin, pos - begin));
        auto countOf = [&](char ch) { return std::count(text.begin(), text.end(), ch); };
        Token t;
        if (text.size() == 10 && countOf('-') == 2 && text[2] == '-' && text[5] == '-') {
            bool digitsOnly = true;
            for (size_t i = 0; i < text.size(); ++i)
                if (i != 2 && i != 5 && !isDigit(text[i])) digitsOnly = false;
            if (digitsOnly) {
                Date d{std::stoi(text.substr(6, 4)), std::stoi(text.substr(3, 2)),
                       std::stoi(text.substr(0, 2))};
                if (d.ok()) {
                    t = make(Tok::date, startLine, startCol);
                    t.date = d;
                } else {
                    t = make(Tok::badDate, startLine, startCol);
                }
                t.text = std::move(text);
                return t;
            }
        }
        if (text.find('-', 1) != std::string::npos || countOf('.') > 1) {
            t = make(countOf('-') ? Tok::badDate : Tok::badNumber, startLine, startCol);
            t.text = std::move(text);
            return t;
        }
        double value = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || p != text.data() + text.size()) {
            t = make(Tok::badNumber, startLine, startCol);
        } else {
            t = make(Tok::number, startLine, startCol);
            t.number = value;
            t.isInt = text.find('.') == std::string::npos;
        }
        t.text = std::move(text);
        return t;
    }
};

// ---------------------------------------------------------------------------
// Declaration keywords
// ---------------------------------------------------------------------------

enum class Decl {
    project,
    developmentTeam,
    testerTeam,
    publicReporterTeam,
    nonCodingContributorTeam,
    participant,
    organization,
    targetCommunity,
    socialContext,
    useCase,
    adaptation,
    governance,
    body,
    rule,
    funder,
};

const std::map<std::string_view, Decl>& declKeywords() {
    static const std::map<std::string_view, Decl> kw = {
        {"project", Decl::project},
        {"developmentTeam", Decl::developmentTeam},
        {"testerTeam", Decl::testerTeam},
        {"publicReporterTeam", Decl::publicReporterTeam},
        {"nonCodingContributorTeam", Decl::nonCodingContributorTeam},
        {"participant", Decl::participant},
        {"organization", Decl::organization},
        {"targetCommunity", Decl::targetCommunity},
        {"socialContext", Decl::socialContext},
        {"useCase", Decl::useCase},
        {"adaptation", Decl::adaptation},
        {"governance", Decl::governance},
        {"body", Decl::body},
        {"rule", Decl::rule},
        {"funder", Decl::funder},
    };
    return kw;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    std::vector<Token> toks;
    size_t i = 0;
    ParseResult result;
    bool projectSeen = false;

    explicit Parser(std::string_view source, std::string_view fileName) {
        Lexer lex(source, fileName);
        for (;;) {
            Token t = lex.next();
            bool eof = t.kind == Tok::eof;
            toks.push_back(std::move(t));
            if (eof) break;
        }
    }

    const Token& tok(size_t ahead = 0) const {
        size_t k = i + ahead;
        return k < toks.size() ? toks[k] : toks.back();
    }
    void advance() {
        if (i + 1 < toks.size()) ++i;
    }
    bool atEof() const { return tok().kind == Tok::eof; }

    void report(Severity sev, const char* code, std::string message, const SourceSpan& span) {
        result.diagnostics.push_back({sev, code, std::move(message), span});
    }
    void error(const char* code, std::string message, const SourceSpan& span) {
        report(Severity::error, code, std::move(message), span);
    }
    void warn(const char* code, std::string message, const SourceSpan& span) {
        report(Severity::warning, code, std::move(message), span);
    }

    // "socialContext" is both a keyword and a use-case field; a trailing ':'
    // disambiguates in favour of the field.
    bool atDeclKeyword() const {
        return tok().kind == Tok::word && tok().firstOnLine &&
               declKeywords().count(tok().text) > 0 && tok(1).kind != Tok::colon;
    }

    // Recovery: skip to the next top-level keyword at the start of a line.
    void syncToNextDecl() {
        advance();
        while (!atEof() && !atDeclKeyword()) advance();
    }

    // A field line begins with a word followed by ':'.
    bool atFieldStart() const {
        return tok().kind == Tok::word && tok(1).kind == Tok::colon && !atDeclKeyword();
    }

    void run() {
        while (!atEof()) {
            if (tok().kind == Tok::ellipsis) {
                result.card.excerpt = true;
                advance();
                continue;
            }
            if (tok().kind == Tok::badChar) {
                error(diag::SYN_UNEXPECTED_CHAR, "stray '" + tok().text + "'", tok().span);
                syncToNextDecl();
                continue;
            }
            if (tok().kind != Tok::word || !declKeywords().count(tok().text)) {
                error(diag::SYN_EXPECTED_DECL,
                      "expected a declaration such as 'developmentTeam' or 'targetCommunity'",
                      tok().span);
                syncToNextDecl();
                continue;
            }
            parseDecl(declKeywords().at(tok().text));
        }
        std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                         [](const Diagnostic& a, const Diagnostic& b) {
                             if (a.span.startLine != b.span.startLine)
                                 return a.span.startLine < b.span.startLine;
                             return a.span.startCol < b.span.startCol;
                         });
    }

    // ------------------------------------------------------------------
    // Values
    // ------------------------------------------------------------------

    struct Fail {}; // thrown on field-level errors; the whole block is dropped

    [[noreturn]] void failHere(const char* code, std::string message) {
        error(code, std::move(message), tok().span);
        throw Fail{};
    }

    // True when the cursor sits where an open collection must implicitly end:
    // a fresh field line, a fresh declaration, or end of input.
    bool atImplicitClose() const {
        if (atEof()) return true;
        if (!tok().firstOnLine) return false;
        return atDeclKeyword() || atFieldStart();
    }

    std::string parseString() {
        if (tok().kind != Tok::string) failHere(diag::SYN_BAD_VALUE, "expected a quoted string");
        if (tok().unterminated)
            warn(diag::SYN_UNTERMINATED_STRING, "closing '\"' added at end of line", tok().span);
        std::string v = tok().text;
        advance();
        return v;
    }

    int parseInt() {
        if (tok().kind != Tok::number || !tok().isInt)
            failHere(diag::SYN_BAD_VALUE, "expected an integer");
        int v = static_cast<int>(tok().number);
        advance();
        return v;
    }

    double parseFloat() {
        if (tok().kind != Tok::number) failHere(diag::SYN_BAD_VALUE, "expected a number");
        double v = tok().number;
        advance();
        return v;
    }

    Date parseDateValue() {
        if (tok().kind == Tok::badDate)
            failHere(diag::SYN_BAD_DATE, "'" + tok().text + "' is not a valid DD-MM-YYYY date");
        if (tok().kind != Tok::date) failHere(diag::SYN_BAD_VALUE, "expected a DD-MM-YYYY date");
        Date d = tok().date;
        advance();
        return d;
    }

    std::string parseWordOrString() {
        if (tok().kind == Tok::word) {
            std::string v = tok().text;
            advance();
            return v;
        }
        return parseString();
    }

    Ref parseRef() {
        if (tok().kind != Tok::word) failHere(diag::SYN_BAD_VALUE, "expected an id reference");
        Ref r;
        r.id = tok().text;
        r.span = tok().span;
        advance();
        return r;
    }

    template <typename E>
    E parseEnum(std::optional<E> (*fromToken)(std::string_view), const char* what) {
        if (tok().kind != Tok::word)
            failHere(diag::SYN_BAD_VALUE, std::string("expected a ") + what + " keyword");
        auto v = fromToken(tok().text);
        if (!v) failHere(diag::SYN_BAD_ENUM, "'" + tok().text + "' is not a " + what);
        advance();
        return *v;
    }

    // other("free text") escape hatch shared by the typed enums.
    template <typename T>
    T parseTypedEnum(std::optional<typename T::Kind> (*fromToken)(std::string_view),
                     const char* what) {
        if (tok().kind != Tok::word)
            failHere(diag::SYN_BAD_VALUE, std::string("expected a ") + what + " keyword");
        auto kind = fromToken(tok().text);
        if (!kind) failHere(diag::SYN_BAD_ENUM, "'" + tok().text + "' is not a " + what);
        advance();
        T v;
        v.kind = *kind;
        if (v.kind == T::other && tok().kind == Tok::lparen) {
            advance();
            v.detail = parseString();
            if (tok().kind != Tok::rparen) failHere(diag::SYN_EXPECTED_RPAREN, "expected ')'");
            advance();
        }
        return v;
    }

    void expectRParen() {
        if (tok().kind != Tok::rparen)
            failHere(diag::SYN_EXPECTED_RPAREN, "expected ')' to close the pair");
        advance();
    }

    AgeRange parseAgeRange() {
        if (tok().kind != Tok::lparen)
            failHere(diag::SYN_BAD_VALUE, "expected a '(min, max)' pair");
        advance();
        AgeRange r;
        r.minYears = parseInt();
        if (tok().kind == Tok::comma) advance();
        r.maxYears = parseInt();
        expectRParen();
        return r;
    }

    LanguageSkill parseLanguageSkill() {
        if (tok().kind != Tok::lparen)
            failHere(diag::SYN_BAD_VALUE, "expected a '(language, proficiency)' pair");
        advance();
        LanguageSkill s;
        s.language = LanguageValue::of(parseWordOrString());
        if (tok().kind == Tok::comma) advance();
        s.proficiency = parseEnum<Proficiency>(proficiencyFromToken, "CEFR proficiency");
        expectRParen();
        return s;
    }

    Membership parseMembership() {
        if (tok().kind != Tok::lparen)
            failHere(diag::SYN_BAD_VALUE, "expected a '(team, role, startDate, endDate)' entry");
        advance();
        Membership m;
        m.team = parseRef();
        if (tok().kind == Tok::comma) {
            advance();
            m.role = parseString();
        }
        if (tok().kind == Tok::comma) {
            advance();
            m.startDate = parseDateValue();
        }
        if (tok().kind == Tok::comma) {
            advance();
            m.endDate = parseDateValue();
        }
        expectRParen();
        return m;
    }

    template <typename T>
    std::vector<T> parseList(std::function<T()> element) {
        if (tok().kind != Tok::lbracket) failHere(diag::SYN_BAD_VALUE, "expected '[' to open a list");
        SourceSpan open = tok().span;
        advance();
        std::vector<T> items;
        for (;;) {
            if (tok().kind == Tok::rbracket) {
                advance();
                break;
            }
            if (tok().kind == Tok::ellipsis) {
                result.card.excerpt = true;
                advance();
                continue;
            }
            if (tok().kind == Tok::comma) {
                advance();
                continue;
            }
            if (atImplicitClose()) {
                warn(diag::SYN_UNCLOSED_ARRAY, "list opened here was never closed", open);
                break;
            }
            items.push_back(element());
        }
        return items;
    }

    std::vector<std::string> parseStringList() {
        return parseList<std::string>([this] { return parseString(); });
    }
    std::vector<Ref> parseRefList() {
        return parseList<Ref>([this] { return parseRef(); });
    }

    // Consume a value of any shape (for unknown fields).
    void skipValue() {
        if (atImplicitClose()) return;
        switch (tok().kind) {
        case Tok::lbracket: {
            advance();
            int depth = 1;
            while (!atEof() && depth > 0 && !atImplicitClose()) {
                if (tok().kind == Tok::lbracket) ++depth;
                if (tok().kind == Tok::rbracket) --depth;
                advance();
            }
            break;
        }
        case Tok::lparen: {
            advance();
            int depth = 1;
            while (!atEof() && depth > 0 && !atImplicitClose()) {
                if (tok().kind == Tok::lparen) ++depth;
                if (tok().kind == Tok::rparen) --depth;
                advance();
            }
            break;
        }
        default:
            advance();
        }
    }

    // ------------------------------------------------------------------
    // Field dispatch
    // ------------------------------------------------------------------

    // One handler per field name; the same profile table is reused by every
    // group-bearing block kind.
    using FieldHandler = std::function<void()>;
    using FieldTable = std::map<std::string, FieldHandler>;

    void addProfileFields(FieldTable& fields, GroupProfile& p) {
        fields["description"] = [this, &p] { p.description = parseString(); };
        fields["ageRange"] = [this, &p] { p.ageRange = parseAgeRange(); };
        fields["locations"] = [this, &p] { p.locations = parseStringList(); };
        fields["countries"] = [this, &p] {
            p.countries = parseList<CountryValue>(
                [this] { return CountryValue::of(parseWordOrString()); });
        };
        fields["ethnicities"] = [this, &p] { p.ethnicities = parseStringList(); };
        fields["genders"] = [this, &p] {
            p.genders = parseList<DistributionEntry>(
                [this] { return DistributionEntry::parse(parseString()); });
        };
        fields["religiousBeliefs"] = [this, &p] { p.religiousBeliefs = parseStringList(); };
        fields["educationalLevels"] = [this, &p] {
            p.educationalLevels = parseList<EducationLevel>([this] {
                return parseEnum<EducationLevel>(educationLevelFromToken, "education level");
            });
        };
        fields["spokenLanguages"] = [this, &p] {
            p.spokenLanguages =
                parseList<LanguageSkill>([this] { return parseLanguageSkill(); });
        };
        fields["socioEconomicStati"] = [this, &p] {
            p.socioEconomicStati = parseList<SocioEconomicClass>([this] {
                return parseEnum<SocioEconomicClass>(socioEconomicClassFromToken,
                                                     "socio-economic class");
            });
        };
        fields["skillLevels"] = [this, &p] {
            p.skillLevels = parseList<SkillLevel>(
                [this] { return parseEnum<SkillLevel>(skillLevelFromToken, "skill level"); });
        };
        fields["workplaceType"] = [this, &p] {
            p.workplaceType = parseEnum<WorkplaceType>(workplaceTypeFromToken, "workplace type");
        };
        fields["averageTenure"] = [this, &p] { p.averageTenure = parseFloat(); };
    }

    void addLanguageSkillListField(FieldTable& fields, const char* name,
                                   std::vector<LanguageSkill>& into) {
        fields[name] = [this, &into] {
            into = parseList<LanguageSkill>([this] { return parseLanguageSkill(); });
        };
    }

    LabourForce& labour(Team& t) {
        if (!t.sourcing) t.sourcing.emplace();
        return *t.sourcing;
    }

    void addTeamFields(FieldTable& fields, Team& t) {
        addProfileFields(fields, t.profile);
        fields["teamSize"] = [this, &t] { t.teamSize = parseInt(); };
        fields["startDate"] = [this, &t] { t.startDate = parseDateValue(); };
        fields["members"] = [this, &t] { t.members = parseRefList(); };
        fields["sourcing"] = [this, &t] {
            labour(t).sourcing =
                parseEnum<LabourSourcing>(labourSourcingFromToken, "labour sourcing");
        };
        fields["salary"] = [this, &t] { labour(t).salary = parseString(); };
        fields["labourRights"] = [this, &t] { labour(t).labourRights = parseString(); };
        fields["company"] = [this, &t] { labour(t).company = parseString(); };
        fields["country"] = [this, &t] {
            labour(t).country = CountryValue::of(parseWordOrString());
        };
        // Kind-specific fields parse on any team; the validator reports
        // KIND_DETAIL_MISMATCH when they sit on the wrong kind.
        fields["testType"] = [this, &t] {
            t.testType = parseEnum<TestType>(testTypeFromToken, "test type");
        };
        fields["platform"] = [this, &t] { t.platform = parseString(); };
        fields["taskDescription"] = [this, &t] { t.taskDescription = parseString(); };
        fields["iterations"] = [this, &t] { t.iterations = parseInt(); };
        fields["durationHours"] = [this, &t] { t.durationHours = parseFloat(); };
        fields["reportingPlatforms"] = [this, &t] { t.reportingPlatforms = parseStringList(); };
        fields["contributionCount"] = [this, &t] { t.contributionCount = parseInt(); };
        fields["contributorRoles"] = [this, &t] {
            t.contributorRoles = parseList<ContributorRole>([this] {
                return parseTypedEnum<ContributorRole>(contributorRoleFromToken,
                                                       "contributor role");
            });
        };
    }

    // Parses "field: value" lines until the next declaration. Throws Fail on
    // the first error; the caller drops the block.
    void parseFields(const FieldTable& fields) {
        std::vector<std::string> seen;
        while (!atEof() && !atDeclKeyword()) {
            if (tok().kind == Tok::ellipsis) {
                result.card.excerpt = true;
                advance();
                continue;
            }
            if (tok().kind == Tok::lbracket && tok(1).kind == Tok::ellipsis &&
                tok(2).kind == Tok::rbracket) {
                // "[...]" after a declaration header: body elided in excerpts.
                result.card.excerpt = true;
                advance();
                advance();
                advance();
                continue;
            }
            if (tok().kind == Tok::badChar) {
                error(diag::SYN_UNEXPECTED_CHAR, "stray '" + tok().text + "'", tok().span);
                throw Fail{};
            }
            if (tok().kind != Tok::word) {
                error(diag::SYN_EXPECTED_COLON, "expected a 'field:' line", tok().span);
                throw Fail{};
            }
            Token name = tok();
            if (tok(1).kind != Tok::colon) {
                // "word word" at the start of a line reads as a declaration
                // with an unknown keyword, not as a field missing its colon.
                if (name.firstOnLine && tok(1).kind == Tok::word && !tok(1).firstOnLine) {
                    error(diag::SYN_EXPECTED_DECL,
                          "'" + name.text + "' is not a declaration keyword", name.span);
                } else {
                    error(diag::SYN_EXPECTED_COLON, "expected ':' after '" + name.text + "'",
                          name.span);
                }
                throw Fail{};
            }
            advance();
            advance();
            if (tok().kind == Tok::ellipsis) { // elided value
                result.card.excerpt = true;
                advance();
                continue;
            }
            if (atImplicitClose() || atEof()) {
                error(diag::SYN_MISSING_VALUE, "field '" + name.text + "' has no value",
                      name.span);
                throw Fail{};
            }
            auto handler = fields.find(name.text);
            if (handler == fields.end()) {
                warn(diag::SYN_UNKNOWN_FIELD, "unknown field '" + name.text + "' ignored",
                     name.span);
                skipValue();
                continue;
            }
            if (std::find(seen.begin(), seen.end(), name.text) != seen.end())
                warn(diag::SYN_DUPLICATE_FIELD, "field '" + name.text + "' repeated", name.span);
            seen.push_back(name.text);
            handler->second();
        }
    }

    // Declaration header: keyword then id.
    std::string parseHeaderId(SourceSpan& spanOut) {
        Token kw = tok();
        advance();
        if (tok().kind != Tok::word || tok().firstOnLine) {
            error(diag::SYN_EXPECTED_DECL, "'" + kw.text + "' needs an id on the same line",
                  kw.span);
            throw Fail{};
        }
        spanOut = kw.span;
        spanOut.endLine = tok().span.endLine;
        spanOut.endCol = tok().span.endCol;
        std::string id = tok().text;
        advance();
        return id;
    }

    Governance& governanceSection() {
        if (!result.card.governance) result.card.governance.emplace();
        return *result.card.governance;
    }

    void parseDecl(Decl decl) {
        try {
            switch (decl) {
            case Decl::project: {
                Token kw = tok();
                if (projectSeen)
                    warn(diag::SYN_DUPLICATE_FIELD, "'project' declared again", kw.span);
                projectSeen = true;
                advance();
                if (!tok().firstOnLine &&
                    (tok().kind == Tok::word || tok().kind == Tok::string)) {
                    result.card.projectName = parseWordOrString();
                }
                FieldTable fields;
                fields["description"] = [this] { result.card.description = parseString(); };
                parseFields(fields);
                break;
            }
            case Decl::developmentTeam:
            case Decl::testerTeam:
            case Decl::publicReporterTeam:
            case Decl::nonCodingContributorTeam: {
                Team t;
                t.kind = decl == Decl::developmentTeam ? TeamKind::development
                         : decl == Decl::testerTeam    ? TeamKind::tester
                         : decl == Decl::publicReporterTeam
                             ? TeamKind::publicReporter
                             : TeamKind::nonCodingContributor;
                t.id = parseHeaderId(t.span);
                FieldTable fields;
                addTeamFields(fields, t);
                parseFields(fields);
                result.card.teams.push_back(std::move(t));
                break;
            }
            case Decl::participant: {
                Participant p;
                p.id = parseHeaderId(p.span);
                FieldTable fields;
                fields["name"] = [this, &p] { p.name = parseString(); };
                addLanguageSkillListField(fields, "spokenLanguages", p.spokenLanguages);
                fields["ethnicity"] = [this, &p] { p.ethnicity = parseString(); };
                fields["gender"] = [this, &p] { p.gender = parseString(); };
                fields["age"] = [this, &p] { p.age = parseInt(); };
                fields["socioEconomicStatus"] = [this, &p] {
                    p.socioEconomicStatus = parseEnum<SocioEconomicClass>(
                        socioEconomicClassFromToken, "socio-economic class");
                };
                fields["skillLevel"] = [this, &p] {
                    p.skillLevel = parseEnum<SkillLevel>(skillLevelFromToken, "skill level");
                };
                fields["tenure"] = [this, &p] { p.tenure = parseFloat(); };
                fields["educationLevel"] = [this, &p] {
                    p.educationLevel =
                        parseEnum<EducationLevel>(educationLevelFromToken, "education level");
                };
                fields["country"] = [this, &p] {
                    p.country = CountryValue::of(parseWordOrString());
                };
                fields["participantId"] = [this, &p] { p.participantId = parseString(); };
                fields["memberships"] = [this, &p] {
                    p.memberships =
                        parseList<Membership>([this] { return parseMembership(); });
                };
                parseFields(fields);
                result.card.participants.push_back(std::move(p));
                break;
            }
            case Decl::organization: {
                Organization o;
                o.id = parseHeaderId(o.span);
                FieldTable fields;
                addProfileFields(fields, o.profile);
                fields["name"] = [this, &o] { o.name = parseString(); };
                fields["type"] = [this, &o] {
                    o.type = parseTypedEnum<OrgType>(orgTypeFromToken, "organization type");
                };
                parseFields(fields);
                result.card.organizations.push_back(std::move(o));
                break;
            }
            case Decl::targetCommunity: {
                TargetCommunity t;
                t.id = parseHeaderId(t.span);
                FieldTable fields;
                addProfileFields(fields, t.profile);
                fields["needs"] = [this, &t] { t.needs = parseString(); };
                parseFields(fields);
                result.card.targetCommunities.push_back(std::move(t));
                break;
            }
            case Decl::socialContext: {
                SocialContext s;
                s.id = parseHeaderId(s.span);
                FieldTable fields;
                fields["description"] = [this, &s] { s.description = parseString(); };
                addLanguageSkillListField(fields, "spokenLanguages", s.spokenLanguages);
                fields["culturalTraits"] = [this, &s] { s.culturalTraits = parseStringList(); };
                fields["countries"] = [this, &s] {
                    s.countries = parseList<CountryValue>(
                        [this] { return CountryValue::of(parseWordOrString()); });
                };
                parseFields(fields);
                result.card.socialContexts.push_back(std::move(s));
                break;
            }
            case Decl::useCase: {
                UseCase u;
                u.id = parseHeaderId(u.span);
                FieldTable fields;
                fields["description"] = [this, &u] { u.description = parseString(); };
                fields["targetCommunities"] = [this, &u] {
                    u.targetCommunities = parseRefList();
                };
                fields["socialContext"] = [this, &u] { u.socialContext = parseRef(); };
                parseFields(fields);
                result.card.useCases.push_back(std::move(u));
                break;
            }
            case Decl::adaptation: {
                Adaptation a;
                a.id = parseHeaderId(a.span);
                FieldTable fields;
                fields["description"] = [this, &a] { a.description = parseString(); };
                fields["targetCommunities"] = [this, &a] {
                    a.targetCommunities = parseRefList();
                };
                fields["relatedTeams"] = [this, &a] { a.relatedTeams = parseRefList(); };
                fields["release"] = [this, &a] { a.release = parseString(); };
                parseFields(fields);
                result.card.adaptations.push_back(std::move(a));
                break;
            }
            case Decl::governance: {
                advance(); // bare section keyword, no id
                std::vector<std::string> shareholders;
                std::string legalRegulation;
                FieldTable fields;
                fields["shareholders"] = [this, &shareholders] {
                    shareholders = parseStringList();
                };
                fields["legalRegulation"] = [this, &legalRegulation] {
                    legalRegulation = parseString();
                };
                parseFields(fields);
                auto& gov = governanceSection();
                if (!shareholders.empty()) gov.shareholders = std::move(shareholders);
                if (!legalRegulation.empty()) gov.legalRegulation = std::move(legalRegulation);
                break;
            }
            case Decl::body: {
                Body b;
                b.id = parseHeaderId(b.span);
                FieldTable fields;
                GroupProfile profile;
                addProfileFields(fields, profile);
                fields["name"] = [this, &b] { b.name = parseString(); };
                fields["type"] = [this, &b] {
                    b.type = parseTypedEnum<BodyType>(bodyTypeFromToken, "body type");
                };
                fields["members"] = [this, &b] { b.members = parseRefList(); };
                fields["decisionProcess"] = [this, &b] { b.decisionProcess = parseString(); };
                parseFields(fields);
                if (!profile.empty()) b.profile = std::move(profile);
                governanceSection().bodies.push_back(std::move(b));
                break;
            }
            case Decl::rule: {
                GovernanceRule r;
                r.id = parseHeaderId(r.span);
                FieldTable fields;
                fields["text"] = [this, &r] { r.text = parseString(); };
                fields["externalRef"] = [this, &r] { r.externalRef = parseString(); };
                parseFields(fields);
                governanceSection().rules.push_back(std::move(r));
                break;
            }
            case Decl::funder: {
                Funder f;
                f.id = parseHeaderId(f.span);
                FieldTable fields;
                fields["name"] = [this, &f] { f.name = parseString(); };
                fields["type"] = [this, &f] {
                    f.type = parseTypedEnum<FunderType>(funderTypeFromToken, "funder type");
                };
                fields["description"] = [this, &f] { f.description = parseString(); };
                parseFields(fields);
                governanceSection().funders.push_back(std::move(f));
                break;
            }
            }
        } catch (const Fail&) {
            if (!atDeclKeyword()) syncToNextDecl();
        }
    }
};

} // namespace

bool ParseResult::hasErrors() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

ParseResult parseCard(std::string_view source, std::string_view fileName) {
    Parser p(source, fileName);
    p.run();
    return std::move(p.result);
}

Result<Date> parseDate(std::string_view token) {
    if (token.size() != 10 || token[2] != '-' || token[5] != '-')
        return Result<Date>::failure(diag::SYN_BAD_DATE,
                                     "dates are written DD-MM-YYYY");
    for (size_t k = 0; k < token.size(); ++k) {
        if (k == 2 || k == 5) continue;
        if (token[k] < '0' || token[k] > '9')
            return Result<Date>::failure(diag::SYN_BAD_DATE, "dates are written DD-MM-YYYY");
    }
    Date d{std::stoi(std::string(token.substr(6, 4))), std::stoi(std::string(token.substr(3, 2))),
           std::stoi(std::string(token.substr(0, 2)))};
    if (!d.ok())
        return Result<Date>::failure(diag::SYN_BAD_DATE,
                                     "'" + std::string(token) + "' is not a calendar date");
    return Result<Date>::success(d);
}

} // namespace divcard
