#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twc/document.hpp"

namespace twc {

// Sorted, non-overlapping inclusive codepoint intervals.
class CjkRanges {
 public:
  using Interval = std::pair<char32_t, char32_t>;

  // Hiragana U+3040..U+3090, Katakana U+30A0..U+30FF, CJK U+4E00..U+9FFF.
  CjkRanges();
  // Throws ConfigInvalid if intervals are unsorted, overlapping or inverted.
  explicit CjkRanges(std::vector<Interval> intervals);

  bool contains(char32_t cp) const;
  const std::vector<Interval>& intervals() const { return intervals_; }

 private:
  std::vector<Interval> intervals_;
};

// True iff `text` has at least `min_run` adjacent codepoints all inside
// `ranges`. Any other codepoint, whitespace included, breaks the run.
bool has_fuzzy_cjk_run(std::string_view text, std::size_t min_run = 5,
                       const CjkRanges& ranges = CjkRanges());

struct UrlBlocklist {
  std::set<std::string> exact_hosts;
  std::set<std::string> host_suffixes;  // each starts with '.'
  std::set<std::string> substrings;

  bool empty() const { return exact_hosts.empty() && host_suffixes.empty() && substrings.empty(); }

  // One entry per line: "host:x", "suffix:.x", "sub:x"; no prefix means
  // host. '#' starts a comment line. Entries are lowercased and suffixes
  // get a leading dot if missing.
  static UrlBlocklist parse(std::string_view contents);
  // Throws ConfigInvalid when the file cannot be read.
  static UrlBlocklist load(const std::filesystem::path& path);
};

// Host part of a URL (lowercased, without userinfo or port), or an empty
// string when the URL cannot be parsed. The scheme is optional.
std::string url_host(std::string_view url);

// Unparsable URLs are reported as blocked.
bool url_blocked(std::string_view url, const UrlBlocklist& blocklist);

// Decodes an HTTP payload to UTF-8: charset from Content-Type, then a
// <meta charset> sniff, then UTF-8 with replacement characters.
std::string decode_payload(std::string_view payload, std::string_view content_type);

// URL check first, then the CJK run test on the decoded raw payload. Never
// looks at extracted text.
FilterVerdict prefilter_document(const RawRecord& record, const UrlBlocklist& blocklist,
                                 std::size_t min_run = 5, const CjkRanges& ranges = CjkRanges());

// Text of the main-content blocks of an HTML page, one line per block.
std::string extract_main_text(std::string_view html);

}  // namespace twc
