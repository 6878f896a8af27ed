#pragma once

#include <string>
#include <vector>

#include "divcard/diagnostics.hpp"
#include "divcard/model.hpp"

namespace divcard {

struct ValidationReport {
    std::vector<Diagnostic> diagnostics;
    bool resolved = false; // true iff zero error-severity diagnostics
};

// Applies the full rule registry: reference resolution, duplicate ids, code
// tables, ranges, dates, distributions, kind/detail consistency. Findings are
// data, sorted by span then code. Cards parsed from published excerpts report
// unresolved references as warnings (the declaration may sit in the elided
// part); complete documents get errors.
ValidationReport validate(const Card& card);

struct PrivacyFinding {
    std::string code;    // SMALL_GROUP_REIDENTIFICATION, SINGLETON_ATTRIBUTE
    std::string subject; // element id
    std::string rationale;
};

inline constexpr const char* SMALL_GROUP_REIDENTIFICATION = "SMALL_GROUP_REIDENTIFICATION";
inline constexpr const char* SINGLETON_ATTRIBUTE = "SINGLETON_ATTRIBUTE";
inline constexpr int kDefaultPrivacyThreshold = 5;

// Aggregate data on tiny groups can identify individuals: teams smaller than
// k disclosing two or more sensitive attribute kinds are flagged, as are
// participants disclosing ethnicity or religious belief directly.
std::vector<PrivacyFinding> lintPrivacy(const Card& card, int k = kDefaultPrivacyThreshold);

enum class Dimension {
    developmentTeam,
    nonCodingContributors,
    testers,
    reporters,
    targetCommunities,
    governanceBoards,
    governanceBodies,
};
std::string_view toToken(Dimension d);

enum class CompletenessLevel { High, Limited, Missing };
std::string_view toToken(CompletenessLevel level);

inline constexpr double kHighCompletenessThreshold = 0.8;

struct CompletenessRow {
    Dimension dimension;
    double populatedRatio = 0; // mean over the dimension's elements
    CompletenessLevel level = CompletenessLevel::Missing;
    std::string note;
};

struct CompletenessReport {
    std::vector<CompletenessRow> rows; // always all seven dimensions, fixed order
};

// Ratio = populated optional profile fields / the kind's field inventory,
// averaged over elements. High >= 0.8, Missing = 0, Limited in between.
CompletenessReport completeness(const Card& card,
                                double highThreshold = kHighCompletenessThreshold);

} // namespace divcard
