#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "twc/document.hpp"

namespace twc {

// Pulls `response` records out of a WARC 1.0/1.1 stream one at a time.
//
// The stream is either a concatenation of gzip members (Common Crawl layout,
// one record per member) or an uncompressed WARC file; the format is sniffed
// from the first two bytes. Only one gzip member is held in memory at once.
//
// Records of other types (request, metadata, warcinfo, ...) are skipped.
// Records with an unreadable header are skipped and tallied in
// corrupt_records(). A gzip member that cannot be inflated throws
// MalformedGzipMember and ends the stream: later next() calls return nullopt.
class WarcReader {
 public:
  explicit WarcReader(std::istream& in);
  ~WarcReader();
  WarcReader(const WarcReader&) = delete;
  WarcReader& operator=(const WarcReader&) = delete;

  std::optional<RawRecord> next();

  std::size_t corrupt_records() const { return corrupt_; }
  std::size_t skipped_records() const { return skipped_; }

 private:
  class Inflater;

  bool fill_pending();
  bool read_plain_record(std::string& block_out);

  std::istream& in_;
  std::unique_ptr<Inflater> inflater_;
  bool sniffed_ = false;
  bool gzip_ = false;
  bool done_ = false;
  // Decompressed bytes of the current member not yet parsed.
  std::string pending_;
  std::size_t pending_pos_ = 0;
  std::size_t corrupt_ = 0;
  std::size_t skipped_ = 0;
};

// Writes WARC records, optionally as one gzip member per record. Used to
// build fixtures; output is byte-stable for identical input.
class WarcWriter {
 public:
  explicit WarcWriter(std::ostream& out, bool gzip = true) : out_(out), gzip_(gzip) {}

  void write_record(const std::vector<std::pair<std::string, std::string>>& headers,
                    const std::string& block);

  // WARC response wrapping an HTTP/1.1 200 response with the given body.
  void write_response(const RawRecord& record);
  void write_request(const std::string& record_id, const std::string& url,
                     const std::string& date);
  void write_metadata(const std::string& record_id, const std::string& url,
                      const std::string& date, const std::string& body);

 private:
  std::ostream& out_;
  bool gzip_;
};

// gzip-compresses `data` as a single member.
std::string gzip_compress(std::string_view data);

}  // namespace twc
