#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "carpetlab/carpet.hpp"

namespace carpetlab {

// Carpet text format: first non-comment line "m n", then one "x y" digit pair
// per line. '#' starts a comment; blank lines and extra whitespace are ignored.

/// Throws Error(ParseError) on malformed text and the Carpet::create codes on
/// semantically invalid input.
Carpet parse_carpet(std::istream& in);
Carpet parse_carpet(const std::string& text);
Carpet load_carpet(const std::filesystem::path& path);

std::string format_carpet(const Carpet& c);

}  // namespace carpetlab
