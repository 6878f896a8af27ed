// divcard: check, emit, report, lint, scan and fetch-corpus over Software
// Diversity Cards. stdout carries only payload; chatter goes to stderr.
// Exit codes: 0 ok, 1 findings at error severity, 2 usage, 3 I/O or network.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "divcard/emit.hpp"
#include "divcard/formatter.hpp"
#include "divcard/llm.hpp"
#include "divcard/parser.hpp"
#include "divcard/remote.hpp"
#include "divcard/scan.hpp"
#include "divcard/validate.hpp"

namespace {

using namespace divcard;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoFailure {
    std::string message;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure{"cannot read " + path};
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure{"cannot write " + path};
    out << content;
    if (!out) throw IoFailure{"cannot write " + path};
}

std::string envOr(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value ? value : fallback;
}

std::string diagnosticLine(const Diagnostic& d, const std::string& fallbackFile) {
    const auto& s = d.span;
    std::string file = s.file.empty() ? fallbackFile : s.file;
    return file + ":" + std::to_string(s.startLine) + ":" + std::to_string(s.startCol) + ": " +
           (d.severity == Severity::error ? "error " : "warning ") + d.code + ": " + d.message;
}

Json diagnosticsJson(const std::vector<Diagnostic>& diagnostics, const std::string& file) {
    Json arr = Json::array();
    for (const auto& d : diagnostics) {
        Json j;
        j["severity"] = d.severity == Severity::error ? "error" : "warning";
        j["code"] = d.code;
        j["message"] = d.message;
        j["span"] = Json{{"file", d.span.file.empty() ? file : d.span.file},
                         {"startLine", d.span.startLine},
                         {"startCol", d.span.startCol},
                         {"endLine", d.span.endLine},
                         {"endCol", d.span.endCol}};
        arr.push_back(std::move(j));
    }
    return arr;
}

// Parse + validate, with parse diagnostics first.
struct CheckedCard {
    Card card;
    std::vector<Diagnostic> diagnostics;
    bool ok = false;
};

CheckedCard loadCard(const std::string& path) {
    CheckedCard out;
    auto parsed = parseCard(readFile(path), path);
    out.card = std::move(parsed.card);
    out.diagnostics = std::move(parsed.diagnostics);
    auto report = validate(out.card);
    out.diagnostics.insert(out.diagnostics.end(), report.diagnostics.begin(),
                           report.diagnostics.end());
    out.ok = std::none_of(out.diagnostics.begin(), out.diagnostics.end(),
                          [](const Diagnostic& d) { return d.severity == Severity::error; });
    return out;
}

std::string nowUtcIso() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::optional<std::chrono::system_clock::time_point> parseIsoTimestamp(const std::string& text) {
    int y, mo, d, h = 0, mi = 0, s = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s) < 3)
        return std::nullopt;
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return std::chrono::system_clock::from_time_t(timegm(&tm));
}

std::unique_ptr<remote::HttpTransport> makeTransport() {
    std::string cassette = envOr("DIVCARD_HTTP_CASSETTE", "");
    if (cassette.empty()) return std::make_unique<remote::RealTransport>();
    auto loaded = remote::CassetteTransport::load(cassette);
    if (!loaded.ok()) throw IoFailure{loaded.error.message};
    auto transport = std::make_unique<remote::CassetteTransport>(std::move(*loaded));
    // Replay must not wait out simulated backoff.
    return transport;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int runCheck(const std::string& path, const std::string& format) {
    auto checked = loadCard(path);
    if (format == "json") {
        Json root;
        root["file"] = path;
        root["diagnostics"] = diagnosticsJson(checked.diagnostics, path);
        std::cout << root.dump(2) << "\n";
    } else {
        for (const auto& d : checked.diagnostics)
            std::cout << diagnosticLine(d, path) << "\n";
    }
    return checked.ok ? kExitOk : kExitFindings;
}

int runEmit(const std::string& path, const std::string& to, const std::string& outPath) {
    auto checked = loadCard(path);
    if (!checked.ok) {
        for (const auto& d : checked.diagnostics)
            if (d.severity == Severity::error)
                std::cerr << diagnosticLine(d, path) << "\n";
        return kExitFindings;
    }
    Result<std::string> emitted = to == "md" ? emitMarkdown(checked.card)
                                             : emitJson(checked.card);
    if (!emitted.ok()) {
        std::cerr << emitted.error.code << ": " << emitted.error.message << "\n";
        return kExitFindings;
    }
    if (outPath.empty())
        std::cout << *emitted;
    else
        writeFile(outPath, *emitted);
    return kExitOk;
}

int runReport(const std::string& path, const std::string& format) {
    auto checked = loadCard(path);
    if (!checked.ok) {
        for (const auto& d : checked.diagnostics)
            if (d.severity == Severity::error)
                std::cerr << diagnosticLine(d, path) << "\n";
        return kExitFindings;
    }
    auto report = completeness(checked.card);
    if (format == "json") {
        Json rows = Json::array();
        for (const auto& row : report.rows) {
            rows.push_back(Json{{"dimension", std::string(toToken(row.dimension))},
                                {"populatedRatio", row.populatedRatio},
                                {"level", std::string(toToken(row.level))},
                                {"note", row.note}});
        }
        Json root;
        root["file"] = path;
        root["rows"] = std::move(rows);
        std::cout << root.dump(2) << "\n";
    } else {
        for (const auto& row : report.rows) {
            char ratio[16];
            std::snprintf(ratio, sizeof ratio, "%.2f", row.populatedRatio);
            std::cout << toToken(row.dimension) << "\t" << ratio << "\t" << toToken(row.level)
                      << "\t" << row.note << "\n";
        }
    }
    return kExitOk;
}

int runLint(const std::string& path, int k, const std::string& format) {
    auto checked = loadCard(path);
    if (!checked.ok) {
        for (const auto& d : checked.diagnostics)
            if (d.severity == Severity::error)
                std::cerr << diagnosticLine(d, path) << "\n";
        return kExitFindings;
    }
    auto findings = lintPrivacy(checked.card, k);
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& f : findings)
            arr.push_back(Json{{"code", f.code}, {"subject", f.subject},
                               {"rationale", f.rationale}});
        Json root;
        root["file"] = path;
        root["k"] = k;
        root["findings"] = std::move(arr);
        std::cout << root.dump(2) << "\n";
    } else {
        for (const auto& f : findings)
            std::cout << f.code << " " << f.subject << ": " << f.rationale << "\n";
    }
    return findings.empty() ? kExitOk : kExitFindings;
}

struct ScanOptions {
    std::string target;
    std::string backend = "rule";
    std::string format = "text";
    std::string skeletonPath;
    std::string collectedAt;
    std::string llmEndpoint;
    std::string llmModel = "gpt-4o-mini";
    std::string nameTablePath;
};

// {"codeOfConduct": ["behaviour"], "release": ["news"]} extends the built-in
// file-name variants.
scan::NameTable loadNameTable(const std::string& path) {
    scan::NameTable table;
    if (path.empty()) return table;
    Json doc = Json::parse(readFile(path), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw IoFailure{"name table must be a JSON object: " + path};
    for (const auto& [key, variants] : doc.items()) {
        auto category = scan::fileCategoryFromToken(key);
        if (!category) throw IoFailure{"unknown file category '" + key + "' in " + path};
        for (const auto& v : variants) table.extra.emplace_back(*category, v.get<std::string>());
    }
    return table;
}

int runScan(const ScanOptions& options) {
    std::string collectedAt = options.collectedAt.empty()
                                  ? envOr("DIVCARD_COLLECTED_AT", nowUtcIso())
                                  : options.collectedAt;

    scan::NameTable nameTable = loadNameTable(options.nameTablePath);
    scan::CommunityFileSet files;
    bool isLocal = std::filesystem::is_directory(options.target);
    static const std::regex kRepoPattern(R"(^[A-Za-z0-9_.-]+/[A-Za-z0-9_.-]+$)");
    if (isLocal) {
        auto collected = scan::collectLocal(options.target, nameTable);
        if (!collected.ok()) {
            std::cerr << collected.error.code << ": " << collected.error.message << "\n";
            return kExitIo;
        }
        files = std::move(*collected);
    } else if (std::regex_match(options.target, kRepoPattern)) {
        auto transport = makeTransport();
        remote::PlatformClient client(*transport);
        client.setToken(envOr("DIVCARD_API_TOKEN", ""));
        client.setNameTable(nameTable);
        if (std::getenv("DIVCARD_HTTP_CASSETTE"))
            client.setSleeper([](std::chrono::milliseconds) {});
        auto collected = client.collectRemote(options.target);
        if (!collected.ok()) {
            std::cerr << collected.error.code << ": " << collected.error.message << "\n";
            return kExitIo;
        }
        files = std::move(*collected);
    } else {
        std::cerr << "scan target must be a directory or owner/repo\n";
        return kExitUsage;
    }

    std::vector<scan::AreaFinding> findings;
    if (options.backend == "llm") {
        llm::LlmConfig config;
        config.endpoint =
            options.llmEndpoint.empty() ? envOr("DIVCARD_LLM_ENDPOINT", "") : options.llmEndpoint;
        config.model = options.llmModel;
        config.apiKey = envOr("DIVCARD_LLM_KEY", "");
        if (config.endpoint.empty()) {
            std::cerr << "llm backend needs DIVCARD_LLM_ENDPOINT or --llm-endpoint\n";
            return kExitUsage;
        }
        auto transport = makeTransport();
        auto classified = llm::classifyLlm(files, config, *transport);
        if (!classified.ok()) {
            std::cerr << classified.error.code << ": " << classified.error.message << "\n";
            return classified.error.code == llm::CLASSIFIER_FORMAT_ERROR ? kExitFindings
                                                                         : kExitIo;
        }
        for (const auto& w : classified->warnings) std::cerr << "warning: " << w << "\n";
        findings = std::move(classified->findings);
    } else {
        findings = scan::classifyRule(files);
    }

    auto report = scan::makeReport(options.target, collectedAt, files, std::move(findings),
                                   options.backend == "llm" ? scan::ScanBackend::llm
                                                            : scan::ScanBackend::rule);
    std::cout << (options.format == "json" ? scan::reportToJson(report)
                                           : scan::reportToText(report));

    if (!options.skeletonPath.empty()) {
        std::string projectName = std::filesystem::path(options.target).filename().string();
        if (projectName.empty()) projectName = options.target;
        Card skeleton = scan::skeletonCard(report, projectName);
        writeFile(options.skeletonPath, formatCard(skeleton));
    }
    return kExitOk;
}

int runFetchCorpus(const std::string& language, int top, const std::string& outDir) {
    auto transport = makeTransport();
    remote::PlatformClient client(*transport);
    client.setToken(envOr("DIVCARD_API_TOKEN", ""));
    if (std::getenv("DIVCARD_HTTP_CASSETTE"))
        client.setSleeper([](std::chrono::milliseconds) {});
    std::string collectedAt = envOr("DIVCARD_COLLECTED_AT", "");
    if (!collectedAt.empty()) {
        if (auto t = parseIsoTimestamp(collectedAt))
            client.setClock([t] { return *t; });
    }

    remote::RepoSelector selector;
    selector.language = language;
    selector.topN = top;
    auto repos = client.selectTopRepos(selector);
    if (!repos.ok()) {
        std::cerr << repos.error.code << ": " << repos.error.message << "\n";
        return kExitIo;
    }
    if (repos->empty()) std::cerr << "warning: no active repositories found\n";

    for (const auto& repo : *repos) {
        auto files = client.collectRemote(repo);
        if (!files.ok()) {
            std::cerr << repo << ": " << files.error.code << ": " << files.error.message << "\n";
            return kExitIo;
        }
        std::string slug = repo;
        std::replace(slug.begin(), slug.end(), '/', '_');
        std::filesystem::path repoDir = std::filesystem::path(outDir) / slug;
        for (const auto& f : files->entries) {
            std::filesystem::path target = repoDir / f.path;
            std::error_code ec;
            std::filesystem::create_directories(target.parent_path(), ec);
            writeFile(target.string(), f.content);
        }
        std::cout << repo << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Software Diversity Card toolchain"};
    app.set_version_flag("--version", "divcard 0.1.0");
    app.require_subcommand(1);

    std::string checkFile, checkFormat = "text";
    auto* check = app.add_subcommand("check", "Parse and validate a .divcard file");
    check->add_option("file", checkFile)->required();
    check->add_option("--format", checkFormat)->check(CLI::IsMember({"text", "json"}));

    std::string emitFile, emitTo, emitOut;
    auto* emit = app.add_subcommand("emit", "Export a validated card to JSON or Markdown");
    emit->add_option("file", emitFile)->required();
    emit->add_option("--to", emitTo)->required()->check(CLI::IsMember({"json", "md"}));
    emit->add_option("-o,--out", emitOut);

    std::string reportFile, reportFormat = "text";
    auto* report = app.add_subcommand("report", "Completeness grading per card dimension");
    report->add_option("file", reportFile)->required();
    report->add_option("--format", reportFormat)->check(CLI::IsMember({"text", "json"}));

    std::string lintFile, lintFormat = "text";
    int lintK = kDefaultPrivacyThreshold;
    auto* lint = app.add_subcommand("lint", "Privacy lint (re-identification risks)");
    lint->add_option("file", lintFile)->required();
    lint->add_option("--k", lintK)->check(CLI::PositiveNumber);
    lint->add_option("--format", lintFormat)->check(CLI::IsMember({"text", "json"}));

    ScanOptions scanOptions;
    auto* scanCmd = app.add_subcommand("scan", "Scan a repository for diversity areas A1-A5");
    scanCmd->add_option("target", scanOptions.target, "directory or owner/repo")->required();
    scanCmd->add_option("--backend", scanOptions.backend)->check(CLI::IsMember({"rule", "llm"}));
    scanCmd->add_option("--format", scanOptions.format)->check(CLI::IsMember({"text", "json"}));
    scanCmd->add_option("--skeleton", scanOptions.skeletonPath,
                        "write a skeleton .divcard here");
    scanCmd->add_option("--collected-at", scanOptions.collectedAt,
                        "pin the report timestamp (ISO 8601)");
    scanCmd->add_option("--llm-endpoint", scanOptions.llmEndpoint);
    scanCmd->add_option("--llm-model", scanOptions.llmModel);
    scanCmd->add_option("--name-table", scanOptions.nameTablePath,
                        "JSON file with extra file-name variants per category");

    std::string corpusLanguage, corpusOut = "corpus";
    int corpusTop = 0;
    auto* fetchCorpus =
        app.add_subcommand("fetch-corpus", "Download community files of top-starred repos");
    fetchCorpus->add_option("--language", corpusLanguage)->required();
    fetchCorpus->add_option("--top", corpusTop)->required();
    fetchCorpus->add_option("--out", corpusOut);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        std::cout << e.what() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*check) return runCheck(checkFile, checkFormat);
        if (*emit) return runEmit(emitFile, emitTo, emitOut);
        if (*report) return runReport(reportFile, reportFormat);
        if (*lint) return runLint(lintFile, lintK, lintFormat);
        if (*scanCmd) return runScan(scanOptions);
        if (*fetchCorpus) return runFetchCorpus(corpusLanguage, corpusTop, corpusOut);
    } catch (const IoFailure& f) {
        std::cerr << "io error: " << f.message << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
