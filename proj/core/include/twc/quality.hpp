#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "twc/document.hpp"

namespace twc {

enum class NewLineDenominator { kWords, kCodepoints };

// Thresholds and word lists for the Gopher, C4 and FineWeb filter families.
// Every comparison is strict in the direction the threshold names: a value
// exactly at a threshold passes.
struct QualityConfig {
  // Gopher
  std::size_t min_words = 50;
  std::size_t max_words = 100000;
  double max_symbol_word_ratio = 0.1;
  double max_ellipsis_line_ratio = 0.3;
  std::vector<std::string> stop_words = default_stop_words();
  std::vector<std::string> symbols = default_symbols();
  std::vector<std::string> ellipsis_forms = {"……", "…", "..."};

  // C4
  double max_bracket_ratio = 0.01;
  std::vector<std::string> policy_substrings = default_policy_substrings();

  // FineWeb
  double min_line_punct_ratio = 0.04;
  std::size_t short_line_char_threshold = 10;
  double max_short_line_ratio = 0.8;
  double max_char_dup_ratio = 0.3;
  double max_new_line_ratio = 0.3;
  NewLineDenominator new_line_denominator = NewLineDenominator::kWords;
  std::u32string terminal_punctuation = U"。！？…」』）.!?\"')";

  // Throws ConfigInvalid on inconsistent values.
  void validate() const;

  static std::vector<std::string> default_stop_words();
  static std::vector<std::string> default_symbols();
  static std::vector<std::string> default_policy_substrings();
};

// CJK ideographs (U+4E00..U+9FFF) count one word each; whitespace-delimited
// tokens made only of non-CJK characters count one word each.
std::size_t word_count(std::string_view text);

// Non-overlapping occurrences of each symbol, summed.
std::size_t symbol_count(std::string_view text, const std::vector<std::string>& symbols);

// Share of non-blank LF-separated lines ending in one of `forms`.
double ellipsis_line_ratio(std::string_view text, const std::vector<std::string>& forms);

FilterVerdict gopher_filter(const Document& doc, const QualityConfig& cfg);

// False when the line should be dropped.
bool c4_line_filter(std::string_view line, const QualityConfig& cfg);

// Brackets {}[]() and fullwidth （）【】 over max(1, codepoints).
double bracket_ratio(std::string_view text);

struct C4Result {
  FilterVerdict verdict;
  std::string cleaned_text;  // unchanged on removal
};

C4Result c4_document_filter(const Document& doc, const QualityConfig& cfg);

// Line statistics over the trimmed, non-blank LF-separated lines.
struct LineStats {
  std::size_t lines = 0;
  std::size_t punctuated_lines = 0;
  std::size_t short_lines = 0;
  std::size_t total_chars = 0;       // codepoints over all lines
  std::size_t duplicated_chars = 0;  // codepoints of lines occurring more than once
  std::size_t newlines = 0;          // LF characters in the raw text

  double line_punct_ratio() const;
  double short_line_ratio() const;
  double char_dup_ratio() const;
};

LineStats line_stats(std::string_view text, const QualityConfig& cfg);
double new_line_ratio(std::string_view text, const QualityConfig& cfg);

FilterVerdict fineweb_filter(const Document& doc, const QualityConfig& cfg);

}  // namespace twc
