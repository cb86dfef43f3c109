#include "twc/document.hpp"

#include "twc/hashing.hpp"

namespace twc {

std::string document_id_for(std::string_view warc_record_id) { return sha1_hex(warc_record_id); }

std::string_view reason_name(Reason r) {
  switch (r) {
    case Reason::kKept: return "Kept";
    case Reason::kTooShort: return "TooShort";
    case Reason::kTooLong: return "TooLong";
    case Reason::kSymbolRatio: return "SymbolRatio";
    case Reason::kEllipsisLines: return "EllipsisLines";
    case Reason::kNoStopWords: return "NoStopWords";
    case Reason::kBracketRatio: return "BracketRatio";
    case Reason::kLinePunctRatio: return "LinePunctRatio";
    case Reason::kShortLineRatio: return "ShortLineRatio";
    case Reason::kCharDupRatio: return "CharDupRatio";
    case Reason::kNewLineRatio: return "NewLineRatio";
    case Reason::kUrlBlocked: return "UrlBlocked";
    case Reason::kNoCjkRun: return "NoCjkRun";
    case Reason::kLowLangConfidence: return "LowLangConfidence";
    case Reason::kSimplifiedScript: return "SimplifiedScript";
    case Reason::kBlockedPhrase: return "BlockedPhrase";
    case Reason::kDuplicate: return "Duplicate";
  }
  return "Unknown";
}

std::optional<Reason> parse_reason(std::string_view name) {
  for (Reason r : kAllReasons) {
    if (reason_name(r) == name) return r;
  }
  return std::nullopt;
}

}  // namespace twc
