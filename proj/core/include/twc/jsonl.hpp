#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "twc/document.hpp"

namespace twc {

// One JSON object per line with keys in the fixed order id, url, date, text,
// meta. Output is byte-stable for identical input. Throws SinkWriteFailure.
std::size_t write_documents_jsonl(std::span<const Document> docs, std::ostream& sink);
void write_document_jsonl(const Document& doc, std::ostream& sink);
std::string document_to_json_line(const Document& doc);

enum class OnMalformed { kAbort, kSkip };

// Lazily reads documents written by write_documents_jsonl. Blank lines are
// ignored. A line that is not a JSON object with string fields id, url, date,
// text (and an optional string map meta) throws MalformedLine, or is skipped
// and counted when constructed with OnMalformed::kSkip.
class JsonlDocumentReader {
 public:
  explicit JsonlDocumentReader(std::istream& source, OnMalformed policy = OnMalformed::kAbort)
      : source_(source), policy_(policy) {}

  std::optional<Document> next();

  std::size_t malformed_lines() const { return malformed_; }
  std::size_t line_number() const { return line_no_; }

 private:
  std::istream& source_;
  OnMalformed policy_;
  std::size_t line_no_ = 0;
  std::size_t malformed_ = 0;
};

Document parse_document_json_line(std::string_view line, std::size_t line_number);

}  // namespace twc
