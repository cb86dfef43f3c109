#include "twc/warc.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <cstring>

#include "twc/error.hpp"
#include "twc/utf8.hpp"

namespace twc {
namespace {

constexpr std::size_t kChunk = 1 << 16;

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

std::string_view strip_ascii(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct HeaderBlock {
  std::vector<std::pair<std::string_view, std::string_view>> fields;
  std::size_t body_offset = 0;  // relative to the start of the parsed view

  std::string_view get(std::string_view name) const {
    for (const auto& [k, v] : fields) {
      if (iequals(k, name)) return v;
    }
    return {};
  }
};

// Parses "start-line CRLF (name: value CRLF)* CRLF". Bare LF is tolerated.
// Returns false when no terminating blank line exists.
bool parse_header_block(std::string_view buf, std::string_view& start_line, HeaderBlock& out) {
  std::size_t pos = 0;
  bool first = true;
  while (pos < buf.size()) {
    const std::size_t nl = buf.find('\n', pos);
    if (nl == std::string_view::npos) return false;
    std::string_view line = buf.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    if (first) {
      start_line = line;
      first = false;
      continue;
    }
    if (line.empty()) {
      out.body_offset = pos;
      return true;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    out.fields.emplace_back(strip_ascii(line.substr(0, colon)), strip_ascii(line.substr(colon + 1)));
  }
  return false;
}

std::optional<std::size_t> parse_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

enum class ParseOutcome { kResponse, kSkipped, kCorrupt };

// Parses one record starting at `pos`; advances `pos` past it on success.
ParseOutcome parse_record(std::string_view buf, std::size_t& pos, RawRecord& out) {
  std::string_view start_line;
  HeaderBlock warc;
  const std::string_view rest = buf.substr(pos);
  if (!parse_header_block(rest, start_line, warc)) return ParseOutcome::kCorrupt;
  if (!start_line.starts_with("WARC/")) return ParseOutcome::kCorrupt;
  const auto length = parse_size(warc.get("Content-Length"));
  if (!length || warc.body_offset + *length > rest.size()) return ParseOutcome::kCorrupt;
  const std::string_view block = rest.substr(warc.body_offset, *length);
  pos += warc.body_offset + *length;
  while (pos < buf.size() && (buf[pos] == '\r' || buf[pos] == '\n')) ++pos;

  if (!iequals(warc.get("WARC-Type"), "response")) return ParseOutcome::kSkipped;
  const std::string_view record_id = warc.get("WARC-Record-ID");
  if (record_id.empty()) return ParseOutcome::kCorrupt;

  out = RawRecord{};
  out.warc_record_id = std::string(record_id);
  std::string_view url = warc.get("WARC-Target-URI");
  if (url.size() >= 2 && url.front() == '<' && url.back() == '>') url = url.substr(1, url.size() - 2);
  out.target_url = std::string(url);
  out.fetch_date = std::string(warc.get("WARC-Date"));

  const std::string block_type = utf8::ascii_lower(warc.get("Content-Type"));
  if (block_type.starts_with("application/http")) {
    std::string_view status_line;
    HeaderBlock http;
    if (!parse_header_block(block, status_line, http)) return ParseOutcome::kCorrupt;
    out.content_type = std::string(http.get("Content-Type"));
    out.payload = std::string(block.substr(http.body_offset));
  } else {
    out.content_type = std::string(warc.get("Content-Type"));
    out.payload = std::string(block);
  }
  return ParseOutcome::kResponse;
}

}  // namespace

class WarcReader::Inflater {
 public:
  explicit Inflater(std::istream& in) : in_(in) {
    std::memset(&zs_, 0, sizeof(zs_));
    if (inflateInit2(&zs_, 16 + MAX_WBITS) != Z_OK) throw Error("inflateInit2 failed");
  }
  ~Inflater() { inflateEnd(&zs_); }

  // Inflates the next whole member into `out`. Returns false at clean end of
  // input. Throws MalformedGzipMember on corrupt or truncated members.
  bool next_member(std::string& out) {
    out.clear();
    if (zs_.avail_in == 0 && !refill()) return false;
    const std::uint64_t member_offset = consumed_;
    if (inflateReset(&zs_) != Z_OK) throw MalformedGzipMember(member_offset, "inflateReset failed");
    std::array<unsigned char, kChunk> buf;
    for (;;) {
      if (zs_.avail_in == 0 && !refill()) {
        throw MalformedGzipMember(member_offset, "truncated member");
      }
      zs_.next_out = buf.data();
      zs_.avail_out = static_cast<uInt>(buf.size());
      const uInt before = zs_.avail_in;
      const int rc = inflate(&zs_, Z_NO_FLUSH);
      consumed_ += before - zs_.avail_in;
      out.append(reinterpret_cast<const char*>(buf.data()), buf.size() - zs_.avail_out);
      if (rc == Z_STREAM_END) return true;
      if (rc != Z_OK && rc != Z_BUF_ERROR) {
        throw MalformedGzipMember(member_offset, zs_.msg ? zs_.msg : "inflate error");
      }
    }
  }

 private:
  bool refill() {
    in_.read(reinterpret_cast<char*>(input_.data()), static_cast<std::streamsize>(input_.size()));
    const auto got = in_.gcount();
    if (got <= 0) return false;
    zs_.next_in = input_.data();
    zs_.avail_in = static_cast<uInt>(got);
    return true;
  }

  std::istream& in_;
  z_stream zs_;
  std::array<unsigned char, kChunk> input_{};
  std::uint64_t consumed_ = 0;
};

WarcReader::WarcReader(std::istream& in) : in_(in) {}
WarcReader::~WarcReader() = default;

bool WarcReader::fill_pending() {
  pending_pos_ = 0;
  try {
    return inflater_->next_member(pending_);
  } catch (...) {
    done_ = true;
    pending_.clear();
    throw;
  }
}

bool WarcReader::read_plain_record(std::string& block_out) {
  block_out.clear();
  std::string line;
  std::size_t content_length = 0;
  bool have_length = false;
  bool started = false;
  while (std::getline(in_, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!started) {
      if (line.empty()) continue;
      started = true;
    } else if (line.empty()) {
      break;
    }
    block_out += line;
    block_out += "\r\n";
    const auto colon = line.find(':');
    if (colon != std::string::npos && iequals(strip_ascii(std::string_view(line).substr(0, colon)), "Content-Length")) {
      if (auto v = parse_size(strip_ascii(std::string_view(line).substr(colon + 1)))) {
        content_length = *v;
        have_length = true;
      }
    }
  }
  if (!started) return false;
  block_out += "\r\n";
  if (!have_length) {
    // Without a length the next record boundary is unknowable.
    done_ = true;
    ++corrupt_;
    block_out.clear();
    return false;
  }
  const std::size_t header_size = block_out.size();
  block_out.resize(header_size + content_length);
  in_.read(block_out.data() + header_size, static_cast<std::streamsize>(content_length));
  block_out.resize(header_size + static_cast<std::size_t>(in_.gcount()));
  return true;
}

std::optional<RawRecord> WarcReader::next() {
  while (!done_) {
    if (!sniffed_) {
      sniffed_ = true;
      const int c0 = in_.peek();
      if (c0 == std::char_traits<char>::eof()) {
        done_ = true;
        break;
      }
      gzip_ = (c0 == 0x1F);
      if (gzip_) inflater_ = std::make_unique<Inflater>(in_);
    }

    if (!gzip_) {
      if (!read_plain_record(pending_)) {
        done_ = true;
        break;
      }
      pending_pos_ = 0;
    } else if (pending_pos_ >= pending_.size()) {
      if (!fill_pending()) {
        done_ = true;
        break;
      }
    }

    RawRecord rec;
    switch (parse_record(pending_, pending_pos_, rec)) {
      case ParseOutcome::kResponse:
        if (!gzip_) pending_.clear();
        return rec;
      case ParseOutcome::kSkipped:
        ++skipped_;
        break;
      case ParseOutcome::kCorrupt:
        ++corrupt_;
        pending_pos_ = pending_.size();
        break;
    }
    if (!gzip_) {
      pending_.clear();
      pending_pos_ = 0;
    }
  }
  return std::nullopt;
}

std::string gzip_compress(std::string_view data) {
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (deflateInit2(&zs, 6, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error("deflateInit2 failed");
  }
  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error("deflate failed");
  return out;
}

void WarcWriter::write_record(const std::vector<std::pair<std::string, std::string>>& headers,
                              const std::string& block) {
  std::string rec = "WARC/1.0\r\n";
  for (const auto& [k, v] : headers) rec += k + ": " + v + "\r\n";
  rec += "Content-Length: " + std::to_string(block.size()) + "\r\n\r\n";
  rec += block;
  rec += "\r\n\r\n";
  if (gzip_) rec = gzip_compress(rec);
  out_.write(rec.data(), static_cast<std::streamsize>(rec.size()));
  if (!out_) throw SinkWriteFailure("failed writing WARC record");
}

void WarcWriter::write_response(const RawRecord& record) {
  std::string http = "HTTP/1.1 200 OK\r\n";
  if (!record.content_type.empty()) http += "Content-Type: " + record.content_type + "\r\n";
  http += "Content-Length: " + std::to_string(record.payload.size()) + "\r\n\r\n";
  http += record.payload;
  write_record({{"WARC-Type", "response"},
                {"WARC-Record-ID", record.warc_record_id},
                {"WARC-Target-URI", record.target_url},
                {"WARC-Date", record.fetch_date},
                {"Content-Type", "application/http; msgtype=response"}},
               http);
}

void WarcWriter::write_request(const std::string& record_id, const std::string& url,
                               const std::string& date) {
  std::string host = url;
  if (auto p = host.find("://"); p != std::string::npos) host = host.substr(p + 3);
  host = host.substr(0, host.find('/'));
  write_record({{"WARC-Type", "request"},
                {"WARC-Record-ID", record_id},
                {"WARC-Target-URI", url},
                {"WARC-Date", date},
                {"Content-Type", "application/http; msgtype=request"}},
               "GET / HTTP/1.1\r\nHost: " + host + "\r\n\r\n");
}

void WarcWriter::write_metadata(const std::string& record_id, const std::string& url,
                                const std::string& date, const std::string& body) {
  write_record({{"WARC-Type", "metadata"},
                {"WARC-Record-ID", record_id},
                {"WARC-Target-URI", url},
                {"WARC-Date", date},
                {"Content-Type", "application/warc-fields"}},
               body);
}

}  // namespace twc
