#pragma once

// Deliberately naive re-implementations used as test oracles. None of these
// call into the library's metric code.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace twc::oracle {

std::u32string decode(std::string_view s);
bool is_white_space(char32_t c);

std::size_t word_count(std::string_view text);
double bracket_ratio(std::string_view text);

struct Lines {
  std::size_t lines = 0;
  std::size_t punctuated = 0;
  std::size_t short_lines = 0;
  std::size_t total_chars = 0;
  std::size_t duplicated_chars = 0;
  std::size_t newlines = 0;
};
Lines line_stats(std::string_view text, const std::u32string& terminal_punct, std::size_t short_threshold);

std::size_t symbol_count(std::string_view text, const std::vector<std::string>& symbols);
double ellipsis_line_ratio(std::string_view text, const std::vector<std::string>& forms);

// Naive scan, one pattern at a time.
bool contains_any(std::string_view text, const std::vector<std::string>& patterns);

double exact_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Two-sided Student-t tail probability by adaptive Simpson integration of
// the density over [0, |t|].
double t_two_sided_p_by_integration(double t, double df);

}  // namespace twc::oracle
