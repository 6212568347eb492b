#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "trilab/words.hpp"

namespace trilab {

/// Presentation text format: first significant line `n=<int>`, then one
/// relator per line as three space-separated signed indices (`+1 -2 +3`).
/// `#` starts a comment line; blank lines are ignored. parse(print(p)) == p.
std::string print_presentation(const Presentation& pres,
                               const std::vector<std::string>& header_comments = {});

/// Parses the format above. Rejects missing/garbled `n=` lines, malformed
/// relator lines, out-of-range indices, non-cyclically-reduced triples and
/// duplicate relators.
Presentation parse_presentation(std::string_view text);

Presentation load_presentation_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace trilab
