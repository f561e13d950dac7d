#pragma once

#include <string>

#include "twostudy/types.hpp"

namespace twostudy {

// Reads a two-study p-value table. Expected header (exact match):
//   one-sided mode:   feature_id,p1,p2
//   left-sided mode:  feature_id,p1_left,p2_left
// Data rows: id,value,value with decimal-point doubles. Parse errors carry
// the path and 1-based line number. A header-only file yields m == 0.
TwoStudyPValues read_pvalues_csv(const std::string& path, PValueMode mode);

// Same parser over in-memory text ("<input>" as the path in errors).
TwoStudyPValues parse_pvalues_csv(const std::string& text, PValueMode mode,
                                  const std::string& path = "<input>");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

const char* direction_label(Direction d);

}  // namespace twostudy
