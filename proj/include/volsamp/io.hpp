#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "volsamp/linalg.hpp"

namespace volsamp {

/// Parses one matrix row per line, comma-separated decimal reals. Blank lines
/// and lines starting with '#' are skipped. Throws ParseError naming the
/// line and column of the first bad field, or of a ragged row.
Matrix parse_matrix(std::string_view text);

/// Labels: one value per line, or a single comma-separated line.
Vector parse_labels(std::string_view text);

/// Whole file as bytes; throws ParseError if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

}  // namespace volsamp
