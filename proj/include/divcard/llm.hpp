#pragma once

#include <string>
#include <vector>

#include "divcard/model.hpp"
#include "divcard/remote.hpp"
#include "divcard/scan.hpp"

namespace divcard::llm {

inline constexpr const char* CLASSIFIER_FORMAT_ERROR = "CLASSIFIER_FORMAT_ERROR";

struct LlmConfig {
    std::string endpoint; // chat-completions style URL
    std::string model;
    std::string apiKey;
};

struct Classification {
    std::vector<scan::AreaFinding> findings; // exactly five, A1..A5
    std::vector<std::string> warnings;       // normalizations applied to model output
};

// The bundled few-shot prompt for one area: instructions, five worked
// examples from affirmative to ambiguous to negative, and a strict JSON
// output contract.
std::string areaPrompt(scan::Area area);

// One request per area at temperature 0; malformed responses are retried
// once, then surfaced as CLASSIFIER_FORMAT_ERROR with the raw payload.
Result<Classification> classifyLlm(const scan::CommunityFileSet& files, const LlmConfig& config,
                                   remote::HttpTransport& transport);

} // namespace divcard::llm
