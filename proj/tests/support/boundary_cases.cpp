#include "boundary_cases.hpp"

#include "synth.hpp"
#include "twc/utf8.hpp"

namespace twc::test {
namespace {

// Hands out ideographs in codepoint order so every generated line is unique.
class Ideographs {
 public:
  std::string take(std::size_t n) {
    std::u32string s;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(static_cast<char32_t>(0x4E00 + next_));
      next_ = (next_ + 1) % 0x5200;
    }
    return utf8::encode(s);
  }

 private:
  std::size_t next_ = 0;
};

// `words` ideographs starting with a stop word, one line, full stop.
std::string gopher_line(std::size_t words) {
  Ideographs g;
  return "的" + g.take(words - 1) + "。";
}

std::string with_hashes(std::size_t hashes) {
  Ideographs g;
  std::string s = "的" + g.take(99);  // 100 words
  for (std::size_t i = 0; i < hashes; ++i) s += "#";
  return s + "。";
}

// 10 lines of 6 words; `ellipsis` of them end in an ellipsis.
std::string ellipsis_lines(std::size_t ellipsis) {
  Ideographs g;
  std::string s;
  for (std::size_t i = 0; i < 10; ++i) {
    if (i) s += "\n";
    s += "的" + g.take(5) + (i < ellipsis ? "…" : "。");
  }
  return s;
}

// 100 codepoints, `brackets` of them fullwidth parentheses.
std::string bracketed(std::size_t brackets) {
  Ideographs g;
  std::string s = g.take(100 - brackets);
  for (std::size_t i = 0; i < brackets; ++i) s += (i % 2 ? "）" : "（");
  return s;
}

// `lines` lines of 12 ideographs; only the first ends in punctuation.
std::string punct_lines(std::size_t lines) {
  Ideographs g;
  std::string s;
  for (std::size_t i = 0; i < lines; ++i) {
    if (i) s += "\n";
    s += g.take(11) + (i == 0 ? "。" : g.take(1));
  }
  return s;
}

// Five punctuated lines of exactly `codepoints` codepoints.
std::string lines_of_length(std::size_t codepoints) {
  Ideographs g;
  std::string s;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) s += "\n";
    s += g.take(codepoints - 1) + "。";
  }
  return s;
}

// 10 punctuated lines, `short_lines` of them 3 codepoints, the rest 21.
std::string short_lines(std::size_t short_count) {
  Ideographs g;
  std::string s;
  for (std::size_t i = 0; i < 10; ++i) {
    if (i) s += "\n";
    s += g.take(i < short_count ? 2 : 20) + "。";
  }
  return s;
}

// 100 codepoints over the non-blank lines; one line of `dup_len`
// codepoints appears twice.
std::string duplicated(std::size_t dup_len, std::size_t other_lines, std::size_t other_len) {
  Ideographs g;
  const std::string dup = g.take(dup_len - 1) + "。";
  std::string s = dup;
  for (std::size_t i = 0; i < other_lines; ++i) s += "\n" + g.take(other_len - 1) + "。";
  return s + "\n" + dup;
}

// Two 50-word lines separated by `newlines` line feeds.
std::string spaced(std::size_t newlines) {
  Ideographs g;
  return g.take(50) + "。" + std::string(newlines, '\n') + g.take(50) + "。";
}

}  // namespace

std::vector<BoundaryCase> boundary_cases() {
  std::vector<BoundaryCase> out;
  const auto pair = [&](const std::string& name, Family f, std::string keep_text, std::string remove_text,
                        Reason reason) {
    out.push_back({name + "_at", f, make_doc(name + "-at", std::move(keep_text)), true, Reason::kKept});
    out.push_back({name + "_past", f, make_doc(name + "-past", std::move(remove_text)), false, reason});
  };
  pair("min_words_50", Family::kGopher, gopher_line(50), gopher_line(49), Reason::kTooShort);
  pair("max_words_100000", Family::kGopher, gopher_line(100000), gopher_line(100001), Reason::kTooLong);
  pair("symbol_ratio_0_1", Family::kGopher, with_hashes(10), with_hashes(11), Reason::kSymbolRatio);
  pair("ellipsis_ratio_0_3", Family::kGopher, ellipsis_lines(3), ellipsis_lines(4), Reason::kEllipsisLines);
  pair("bracket_ratio_0_01", Family::kC4, bracketed(1), bracketed(2), Reason::kBracketRatio);
  pair("line_punct_ratio_0_04", Family::kFineWeb, punct_lines(25), punct_lines(26), Reason::kLinePunctRatio);
  pair("short_line_chars_10", Family::kFineWeb, lines_of_length(10), lines_of_length(9), Reason::kShortLineRatio);
  pair("short_line_ratio_0_8", Family::kFineWeb, short_lines(8), short_lines(9), Reason::kShortLineRatio);
  // 30 of 100 and 32 of 100 duplicated codepoints.
  pair("char_dup_ratio_0_3", Family::kFineWeb, duplicated(15, 5, 14), duplicated(16, 4, 17), Reason::kCharDupRatio);
  pair("new_line_ratio_0_3", Family::kFineWeb, spaced(30), spaced(31), Reason::kNewLineRatio);
  return out;
}

FilterVerdict evaluate(const BoundaryCase& c, const QualityConfig& cfg) {
  switch (c.family) {
    case Family::kGopher:
      return gopher_filter(c.doc, cfg);
    case Family::kC4:
      return c4_document_filter(c.doc, cfg).verdict;
    case Family::kFineWeb:
      return fineweb_filter(c.doc, cfg);
  }
  return FilterVerdict::Keep();
}

}  // namespace twc::test
