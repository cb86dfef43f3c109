#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace twc {

// One `response` record pulled out of a WARC archive.
struct RawRecord {
  std::string warc_record_id;
  std::string target_url;
  std::string fetch_date;
  std::string content_type;  // from the HTTP headers of the response
  std::string payload;       // raw HTTP response body

  bool operator==(const RawRecord&) const = default;
};

// The unit every filter acts on. Text is UTF-8 without NULs; byte_len() is
// always the UTF-8 size of the current text.
struct Document {
  std::string id;
  std::string url;
  std::string date;
  std::string text;
  std::map<std::string, std::string> meta;

  std::size_t byte_len() const { return text.size(); }

  bool operator==(const Document&) const = default;
};

// SHA-1 hex of the WARC record id.
std::string document_id_for(std::string_view warc_record_id);

enum class Reason {
  kKept,
  kTooShort,
  kTooLong,
  kSymbolRatio,
  kEllipsisLines,
  kNoStopWords,
  kBracketRatio,
  kLinePunctRatio,
  kShortLineRatio,
  kCharDupRatio,
  kNewLineRatio,
  kUrlBlocked,
  kNoCjkRun,
  kLowLangConfidence,
  kSimplifiedScript,
  kBlockedPhrase,
  kDuplicate,
};

inline constexpr std::array kAllReasons = {
    Reason::kKept,           Reason::kTooShort,        Reason::kTooLong,
    Reason::kSymbolRatio,    Reason::kEllipsisLines,   Reason::kNoStopWords,
    Reason::kBracketRatio,   Reason::kLinePunctRatio,  Reason::kShortLineRatio,
    Reason::kCharDupRatio,   Reason::kNewLineRatio,    Reason::kUrlBlocked,
    Reason::kNoCjkRun,       Reason::kLowLangConfidence, Reason::kSimplifiedScript,
    Reason::kBlockedPhrase,  Reason::kDuplicate,
};

// Stable machine-readable names ("TooShort", "UrlBlocked", ...).
std::string_view reason_name(Reason r);
std::optional<Reason> parse_reason(std::string_view name);

// keep is true exactly when reason is kKept.
class FilterVerdict {
 public:
  static FilterVerdict Keep() { return FilterVerdict(Reason::kKept, std::nullopt); }
  static FilterVerdict Remove(Reason reason, std::optional<double> metric = std::nullopt) {
    return FilterVerdict(reason, metric);
  }

  bool keep() const { return reason_ == Reason::kKept; }
  Reason reason() const { return reason_; }
  const std::optional<double>& metric_value() const { return metric_; }

  bool operator==(const FilterVerdict&) const = default;

 private:
  FilterVerdict(Reason reason, std::optional<double> metric) : reason_(reason), metric_(metric) {}

  Reason reason_;
  std::optional<double> metric_;
};

}  // namespace twc
