#include "divcard/llm.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace divcard::llm {

using Json = nlohmann::ordered_json;

namespace {

constexpr size_t kMaxInputChars = 24000;

struct PromptSpec {
    const char* focus;       // what the area looks for
    const char* subContract; // JSON keys of the sub-findings
    const char* examples;    // five worked examples
};

const PromptSpec& promptSpec(scan::Area area) {
    static const PromptSpec a1{
        "whether the documentation refers to the project's development team and, if so, "
        "whether it mentions profile aspects of the developers (team size, roles, gender, "
        "nationality or geographic distribution, experience, education).",
        "{\"profileAspects\": bool}",
        R"(Example 1
Input: "Our core team is formed by 12 developers from 9 countries, mostly based in Berlin."
Output: {"present": true, "subfindings": {"profileAspects": true}, "evidence": [{"path": "README.md", "excerpt": "Our core team is formed by 12 developers from 9 countries, mostly based in Berlin."}]}

Example 2
Input: "The project is maintained by a small team of volunteers."
Output: {"present": true, "subfindings": {"profileAspects": false}, "evidence": [{"path": "README.md", "excerpt": "The project is maintained by a small team of volunteers."}]}

Example 3
Input: "Install the package with pip and run the test suite."
Output: {"present": false, "subfindings": {"profileAspects": false}, "evidence": []}

Example 4
Input: "Maintainers review pull requests weekly. The maintainer group spans four time zones and a wide range of experience levels."
Output: {"present": true, "subfindings": {"profileAspects": true}, "evidence": [{"path": "CONTRIBUTING.md", "excerpt": "The maintainer group spans four time zones and a wide range of experience levels."}]}

Example 5
Input: "Team up with other users on our forum to share configurations."
Output: {"present": false, "subfindings": {"profileAspects": false}, "evidence": []})"};
    static const PromptSpec a2{
        "whether the documentation describes non-coding contributors (issue reporters, "
        "translators, documenters, reviewers, advocates) and, if so, whether it explains "
        "their roles.",
        "{\"nonCodingRoles\": bool}",
        R"(Example 1
Input: "Thanks to our translators and issue reporters for keeping the project healthy."
Output: {"present": true, "subfindings": {"nonCodingRoles": true}, "evidence": [{"path": "README.md", "excerpt": "Thanks to our translators and issue reporters for keeping the project healthy."}]}

Example 2
Input: "You can contribute without writing code."
Output: {"present": true, "subfindings": {"nonCodingRoles": false}, "evidence": [{"path": "CONTRIBUTING.md", "excerpt": "You can contribute without writing code."}]}

Example 3
Input: "Run make docs to build the documentation locally."
Output: {"present": false, "subfindings": {"nonCodingRoles": false}, "evidence": []}

Example 4
Input: "Documenters maintain the handbook; reviewers triage incoming issues every Friday."
Output: {"present": true, "subfindings": {"nonCodingRoles": true}, "evidence": [{"path": "CONTRIBUTING.md", "excerpt": "Documenters maintain the handbook; reviewers triage incoming issues every Friday."}]}

Example 5
Input: "All code is reviewed by CI before merging."
Output: {"present": false, "subfindings": {"nonCodingRoles": false}, "evidence": []})"};
    static const PromptSpec a3{
        "whether the documentation mentions tests with potential users (beta tests, "
        "usability tests, crowd testing) and, if so, whether it mentions the labour force "
        "behind the tests or the platforms used.",
        "{\"labourForce\": bool, \"platforms\": bool}",
        R"(Example 1
Input: "We ran a public beta test with 500 users recruited through TestFlight."
Output: {"present": true, "subfindings": {"labourForce": false, "platforms": true}, "evidence": [{"path": "README.md", "excerpt": "We ran a public beta test with 500 users recruited through TestFlight."}]}

Example 2
Input: "Usability tests were performed by paid crowd testers before each release."
Output: {"present": true, "subfindings": {"labourForce": true, "platforms": false}, "evidence": [{"path": "README.md", "excerpt": "Usability tests were performed by paid crowd testers before each release."}]}

Example 3
Input: "Run the unit tests with npm test."
Output: {"present": false, "subfindings": {"labourForce": false, "platforms": false}, "evidence": []}

Example 4
Input: "Beta testers can opt in from the settings screen."
Output: {"present": true, "subfindings": {"labourForce": false, "platforms": false}, "evidence": [{"path": "README.md", "excerpt": "Beta testers can opt in from the settings screen."}]}

Example 5
Input: "The test suite covers 90% of the code base."
Output: {"present": false, "subfindings": {"labourForce": false, "platforms": false}, "evidence": []})"};
    static const PromptSpec a4{
        "whether the documentation defines the software's usage context: specific use "
        "cases, target populations, or adaptations for particular social groups "
        "(accessibility, localization).",
        "{\"targetPopulation\": bool, \"adaptation\": bool}",
        R"(Example 1
Input: "The app is designed for elderly citizens with low digital skills and ships a high-contrast mode."
Output: {"present": true, "subfindings": {"targetPopulation": true, "adaptation": true}, "evidence": [{"path": "README.md", "excerpt": "The app is designed for elderly citizens with low digital skills and ships a high-contrast mode."}]}

Example 2
Input: "A toolkit for building web dashboards."
Output: {"present": false, "subfindings": {"targetPopulation": false, "adaptation": false}, "evidence": []}

Example 3
Input: "Intended for researchers analysing census data."
Output: {"present": true, "subfindings": {"targetPopulation": true, "adaptation": false}, "evidence": [{"path": "README.md", "excerpt": "Intended for researchers analysing census data."}]}

Example 4
Input: "The interface has been translated into 40 languages by the community."
Output: {"present": true, "subfindings": {"targetPopulation": false, "adaptation": true}, "evidence": [{"path": "README.md", "excerpt": "The interface has been translated into 40 languages by the community."}]}

Example 5
Input: "Use cases include log processing and metrics aggregation."
Output: {"present": true, "subfindings": {"targetPopulation": false, "adaptation": false}, "evidence": [{"path": "README.md", "excerpt": "Use cases include log processing and metrics aggregation."}]})"};
    static const PromptSpec a5{
        "whether the documentation defines governance participants (boards, committees, "
        "decision processes) and, if so, whether it indicates the project's funders.",
        "{\"funders\": bool}",
        R"(Example 1
Input: "The project is governed by a steering committee and funded by the XYZ Foundation."
Output: {"present": true, "subfindings": {"funders": true}, "evidence": [{"path": "GOVERNANCE.md", "excerpt": "The project is governed by a steering committee and funded by the XYZ Foundation."}]}

Example 2
Input: "Decisions are made by the core maintainers through consensus."
Output: {"present": true, "subfindings": {"funders": false}, "evidence": [{"path": "GOVERNANCE.md", "excerpt": "Decisions are made by the core maintainers through consensus."}]}

Example 3
Input: "See the API reference for the full list of endpoints."
Output: {"present": false, "subfindings": {"funders": false}, "evidence": []}

Example 4
Input: "You can support us on Open Collective; sponsors are listed in BACKERS.md."
Output: {"present": true, "subfindings": {"funders": true}, "evidence": [{"path": "README.md", "excerpt": "You can support us on Open Collective; sponsors are listed in BACKERS.md."}]}

Example 5
Input: "This board shows the current sprint."
Output: {"present": false, "subfindings": {"funders": false}, "evidence": []})"};
    switch (area) {
    case scan::Area::A1: return a1;
    case scan::Area::A2: return a2;
    case scan::Area::A3: return a3;
    case scan::Area::A4: return a4;
    case scan::Area::A5: return a5;
    }
    return a1;
}

std::string filesAsText(const scan::CommunityFileSet& files) {
    std::string out;
    for (const auto& f : files.entries) {
        out += "FILE: " + f.path + "\n";
        out += f.content;
        if (!out.ends_with('\n')) out += '\n';
        out += "\n";
        if (out.size() > kMaxInputChars) {
            out.resize(kMaxInputChars);
            out += "\n[truncated]\n";
            break;
        }
    }
    return out;
}

// Strips markdown code fences some models wrap around JSON.
std::string stripFences(std::string text) {
    auto trim = [](std::string& s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(text);
    if (text.starts_with("```")) {
        size_t firstLine = text.find('\n');
        if (firstLine != std::string::npos) text.erase(0, firstLine + 1);
        if (size_t fence = text.rfind("```"); fence != std::string::npos) text.erase(fence);
        trim(text);
    }
    return text;
}

Result<scan::AreaFinding> parseVerdict(scan::Area area, const std::string& content,
                                       const scan::CommunityFileSet& files,
                                       std::vector<std::string>& warnings) {
    Json doc = Json::parse(stripFences(content), nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("present") ||
        !doc["present"].is_boolean())
        return Result<scan::AreaFinding>::failure(CLASSIFIER_FORMAT_ERROR,
                                                  "not a JSON verdict: " + content);
    scan::AreaFinding finding;
    finding.area = area;
    finding.present = doc["present"].get<bool>();
    for (auto key : scan::areaSubKeys(area)) {
        bool value = false;
        if (doc.contains("subfindings") && doc["subfindings"].is_object()) {
            const auto& subs = doc["subfindings"];
            std::string k(key);
            if (subs.contains(k) && subs[k].is_boolean()) value = subs[k].get<bool>();
        }
        finding.subfindings.emplace_back(std::string(key), value && finding.present);
        if (value && !finding.present)
            warnings.push_back(std::string(scan::toToken(area)) + ": sub-finding '" +
                               std::string(key) + "' dropped because present=false");
    }
    if (doc.contains("evidence") && doc["evidence"].is_array()) {
        for (const auto& item : doc["evidence"]) {
            if (!item.is_object()) continue;
            scan::Evidence ev;
            ev.path = item.value("path", std::string{});
            ev.excerpt = item.value("excerpt", std::string{});
            if (ev.excerpt.size() > 240) ev.excerpt.resize(240);
            // Anchor the quote in the cited file when it is verbatim.
            for (const auto& f : files.entries) {
                if (f.path != ev.path) continue;
                size_t at = f.content.find(ev.excerpt);
                if (at == std::string::npos) break;
                int line = 1, col = 1;
                for (size_t k = 0; k < at; ++k) {
                    if (f.content[k] == '\n') {
                        ++line;
                        col = 1;
                    } else {
                        ++col;
                    }
                }
                ev.span = {ev.path, line, col, line, col};
                break;
            }
            finding.evidence.push_back(std::move(ev));
        }
    }
    if (!finding.present && !finding.evidence.empty()) {
        finding.evidence.clear();
        warnings.push_back(std::string(scan::toToken(area)) +
                           ": evidence dropped because present=false");
    }
    return Result<scan::AreaFinding>::success(std::move(finding));
}

} // namespace

std::string areaPrompt(scan::Area area) {
    const auto& spec = promptSpec(area);
    std::string prompt;
    prompt += "You analyse repository community documentation for diversity reporting.\n";
    prompt += "Decide ";
    prompt += spec.focus;
    prompt += "\n\nRespond with exactly one JSON object and nothing else:\n";
    prompt += "{\"present\": bool, \"subfindings\": ";
    prompt += spec.subContract;
    prompt += ", \"evidence\": [{\"path\": string, \"excerpt\": string}]}\n";
    prompt += "Quote evidence verbatim from the input and keep excerpts under 240 characters.\n";
    prompt += "When present is false, subfindings must all be false and evidence empty.\n\n";
    prompt += spec.examples;
    return prompt;
}

Result<Classification> classifyLlm(const scan::CommunityFileSet& files, const LlmConfig& config,
                                   remote::HttpTransport& transport) {
    Classification out;
    std::string input = filesAsText(files);

    for (scan::Area area :
         {scan::Area::A1, scan::Area::A2, scan::Area::A3, scan::Area::A4, scan::Area::A5}) {
        Json payload;
        payload["model"] = config.model;
        payload["temperature"] = 0;
        payload["messages"] = Json::array({
            Json{{"role", "system"}, {"content", areaPrompt(area)}},
            Json{{"role", "user"}, {"content", input}},
        });

        remote::HttpRequest request;
        request.method = "POST";
        request.url = config.endpoint;
        request.headers["Content-Type"] = "application/json";
        if (!config.apiKey.empty())
            request.headers["Authorization"] = "Bearer " + config.apiKey;
        request.body = payload.dump();

        Result<scan::AreaFinding> verdict =
            Result<scan::AreaFinding>::failure(CLASSIFIER_FORMAT_ERROR, "no attempt");
        for (int attempt = 0; attempt < 2; ++attempt) {
            auto response = transport.send(request);
            if (!response.ok())
                return Result<Classification>::failure(response.error.code,
                                                       response.error.message);
            if (response->status < 200 || response->status >= 300)
                return Result<Classification>::failure(
                    remote::HTTP_ERROR,
                    "status " + std::to_string(response->status) + " from classifier endpoint");
            Json doc = Json::parse(response->body, nullptr, false);
            std::string content;
            if (!doc.is_discarded() && doc.contains("choices") && !doc["choices"].empty())
                content = doc["choices"][0].value("/message/content"_json_pointer,
                                                  std::string{});
            verdict = parseVerdict(area, content, files, out.warnings);
            if (verdict.ok()) break;
        }
        if (!verdict.ok())
            return Result<Classification>::failure(verdict.error.code, verdict.error.message);
        out.findings.push_back(std::move(*verdict));
    }
    return Result<Classification>::success(std::move(out));
}

} // namespace divcard::llm
