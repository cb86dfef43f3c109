#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace twc {

// Parses the one-entry-per-line data file format shared by every list
// (stop words, phrases, symbols, ...): surrounding whitespace is trimmed,
// blank lines and lines starting with '#' are skipped, and a leading
// backslash escapes a literal '#' or '\'.
std::vector<std::string> parse_entry_list(std::string_view contents);

// Throws ConfigInvalid when the file cannot be read.
std::vector<std::string> load_entry_list(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

}  // namespace twc
