#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "divcard/diagnostics.hpp"
#include "divcard/model.hpp"

namespace divcard {

// Outcome of parsing one .divcard document. The card may be partial: blocks
// that produced an error diagnostic are dropped, everything else is kept.
// Callers must not treat the card as valid while error diagnostics exist.
struct ParseResult {
    Card card;
    std::vector<Diagnostic> diagnostics;

    bool hasErrors() const;
};

// Total over arbitrary bytes: never throws, never aborts; recovery skips to
// the next top-level keyword after an error. Accepts LF or CRLF, tolerates a
// UTF-8 BOM, and treats "..." elision markers in published excerpts as
// content-free (the card is flagged as an excerpt).
ParseResult parseCard(std::string_view source, std::string_view fileName);

// DD-MM-YYYY, calendar-checked. SYN_BAD_DATE otherwise.
Result<Date> parseDate(std::string_view token);

} // namespace divcard
