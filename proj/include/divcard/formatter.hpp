#pragma once

#include <string>

#include "divcard/model.hpp"

namespace divcard {

// Canonical .divcard text: fixed section order, fields in schema order,
// 2-space indentation, arrays inline while they fit in 60 columns, LF line
// endings, trailing newline. parseCard(formatCard(c)) is structurally equal
// to c, and formatting is idempotent after one pass.
std::string formatCard(const Card& card);

} // namespace divcard
