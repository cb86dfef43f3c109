#include "twc/quality.hpp"

#include <algorithm>
#include <unordered_map>

#include "twc/builtin_data.hpp"
#include "twc/data_files.hpp"
#include "twc/error.hpp"
#include "twc/utf8.hpp"

namespace twc {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(std::max<std::size_t>(1, den));
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::vector<std::string> QualityConfig::default_stop_words() { return parse_entry_list(builtin_data::kStopWords); }
std::vector<std::string> QualityConfig::default_symbols() { return parse_entry_list(builtin_data::kSymbols); }
std::vector<std::string> QualityConfig::default_policy_substrings() {
  return parse_entry_list(builtin_data::kPolicySubstrings);
}

void QualityConfig::validate() const {
  if (min_words == 0 || min_words >= max_words) throw ConfigInvalid("require 0 < min_words < max_words");
  for (double v : {max_symbol_word_ratio, max_ellipsis_line_ratio, max_bracket_ratio, min_line_punct_ratio,
                   max_short_line_ratio, max_char_dup_ratio, max_new_line_ratio}) {
    if (!in_unit(v)) throw ConfigInvalid("quality ratios must lie in [0, 1]");
  }
  if (stop_words.empty()) throw ConfigInvalid("stop word list is empty");
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  bool token_has_cjk = false;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    if (utf8::is_space(cp)) {
      if (in_token && !token_has_cjk) ++count;
      in_token = token_has_cjk = false;
    } else {
      in_token = true;
      if (utf8::is_cjk_ideograph(cp)) {
        ++count;
        token_has_cjk = true;
      }
    }
  }
  if (in_token && !token_has_cjk) ++count;
  return count;
}

std::size_t symbol_count(std::string_view text, const std::vector<std::string>& symbols) {
  std::size_t n = 0;
  for (const std::string& sym : symbols) {
    if (sym.empty()) continue;
    for (std::size_t pos = text.find(sym); pos != std::string_view::npos; pos = text.find(sym, pos + sym.size())) ++n;
  }
  return n;
}

double ellipsis_line_ratio(std::string_view text, const std::vector<std::string>& forms) {
  std::size_t lines = 0, ellipsis = 0;
  for (std::string_view raw : utf8::split_lines(text)) {
    const std::string_view line = utf8::trim(raw);
    if (line.empty()) continue;
    ++lines;
    if (std::any_of(forms.begin(), forms.end(), [&](const std::string& f) { return !f.empty() && line.ends_with(f); })) {
      ++ellipsis;
    }
  }
  return ratio(ellipsis, lines);
}

FilterVerdict gopher_filter(const Document& doc, const QualityConfig& cfg) {
  const std::size_t words = word_count(doc.text);
  if (words < cfg.min_words) return FilterVerdict::Remove(Reason::kTooShort, static_cast<double>(words));
  if (words > cfg.max_words) return FilterVerdict::Remove(Reason::kTooLong, static_cast<double>(words));
  if (const double r = ratio(symbol_count(doc.text, cfg.symbols), words); r > cfg.max_symbol_word_ratio) {
    return FilterVerdict::Remove(Reason::kSymbolRatio, r);
  }
  if (const double r = ellipsis_line_ratio(doc.text, cfg.ellipsis_forms); r > cfg.max_ellipsis_line_ratio) {
    return FilterVerdict::Remove(Reason::kEllipsisLines, r);
  }
  const bool has_stop_word = std::any_of(cfg.stop_words.begin(), cfg.stop_words.end(), [&](const std::string& w) {
    return !w.empty() && doc.text.find(w) != std::string::npos;
  });
  if (!has_stop_word) return FilterVerdict::Remove(Reason::kNoStopWords);
  return FilterVerdict::Keep();
}

bool c4_line_filter(std::string_view line, const QualityConfig& cfg) {
  if (line.find('{') != std::string_view::npos || line.find('}') != std::string_view::npos) return false;
  const std::string lowered = utf8::ascii_lower(line);
  if (lowered.find("javascript") != std::string::npos) return false;
  for (const std::string& policy : cfg.policy_substrings) {
    if (!policy.empty() && lowered.find(utf8::ascii_lower(policy)) != std::string::npos) return false;
  }
  return true;
}

double bracket_ratio(std::string_view text) {
  std::size_t brackets = 0, total = 0;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    ++total;
    switch (cp) {
      case U'{': case U'}': case U'[': case U']': case U'(': case U')':
      case U'（': case U'）': case U'【': case U'】':
        ++brackets;
        break;
      default:
        break;
    }
  }
  return ratio(brackets, total);
}

C4Result c4_document_filter(const Document& doc, const QualityConfig& cfg) {
  if (const double r = bracket_ratio(doc.text); r > cfg.max_bracket_ratio) {
    return {FilterVerdict::Remove(Reason::kBracketRatio, r), doc.text};
  }
  std::string cleaned;
  cleaned.reserve(doc.text.size());
  bool first = true;
  for (std::string_view line : utf8::split_lines(doc.text)) {
    if (!c4_line_filter(line, cfg)) continue;
    if (!first) cleaned.push_back('\n');
    cleaned.append(line);
    first = false;
  }
  return {FilterVerdict::Keep(), std::move(cleaned)};
}

double LineStats::line_punct_ratio() const { return ratio(punctuated_lines, lines); }
double LineStats::short_line_ratio() const { return ratio(short_lines, lines); }
double LineStats::char_dup_ratio() const { return ratio(duplicated_chars, total_chars); }

LineStats line_stats(std::string_view text, const QualityConfig& cfg) {
  LineStats st;
  std::unordered_map<std::string_view, std::pair<std::size_t, std::size_t>> seen;  // line -> (count, length)
  for (std::string_view raw : utf8::split_lines(text)) {
    const std::string_view line = utf8::trim(raw);
    if (line.empty()) continue;
    ++st.lines;
    const std::u32string cps = utf8::decode(line);
    if (!cps.empty() && cfg.terminal_punctuation.find(cps.back()) != std::u32string::npos) ++st.punctuated_lines;
    if (cps.size() < cfg.short_line_char_threshold) ++st.short_lines;
    st.total_chars += cps.size();
    auto& entry = seen[line];
    ++entry.first;
    entry.second = cps.size();
  }
  for (const auto& [line, info] : seen) {
    if (info.first > 1) st.duplicated_chars += info.first * info.second;
  }
  st.newlines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  return st;
}

double new_line_ratio(std::string_view text, const QualityConfig& cfg) {
  const auto newlines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  const std::size_t den =
      cfg.new_line_denominator == NewLineDenominator::kWords ? word_count(text) : utf8::length(text);
  return ratio(newlines, den);
}

FilterVerdict fineweb_filter(const Document& doc, const QualityConfig& cfg) {
  const LineStats st = line_stats(doc.text, cfg);
  if (const double r = st.line_punct_ratio(); r < cfg.min_line_punct_ratio) {
    return FilterVerdict::Remove(Reason::kLinePunctRatio, r);
  }
  if (const double r = st.short_line_ratio(); r > cfg.max_short_line_ratio) {
    return FilterVerdict::Remove(Reason::kShortLineRatio, r);
  }
  if (const double r = st.char_dup_ratio(); r > cfg.max_char_dup_ratio) {
    return FilterVerdict::Remove(Reason::kCharDupRatio, r);
  }
  if (const double r = new_line_ratio(doc.text, cfg); r > cfg.max_new_line_ratio) {
    return FilterVerdict::Remove(Reason::kNewLineRatio, r);
  }
  return FilterVerdict::Keep();
}

}  // namespace twc
