#include "twc/prefilter.hpp"

#include <iconv.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <fstream>
#include <sstream>

#include "twc/error.hpp"
#include "twc/utf8.hpp"

namespace twc {

CjkRanges::CjkRanges() : intervals_{{0x3040, 0x3090}, {0x30A0, 0x30FF}, {0x4E00, 0x9FFF}} {}

CjkRanges::CjkRanges(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].first > intervals_[i].second) throw ConfigInvalid("inverted codepoint interval");
    if (i > 0 && intervals_[i].first <= intervals_[i - 1].second) {
      throw ConfigInvalid("codepoint intervals must be sorted and non-overlapping");
    }
  }
}

bool CjkRanges::contains(char32_t cp) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), cp,
                             [](char32_t c, const Interval& iv) { return c < iv.first; });
  if (it == intervals_.begin()) return false;
  --it;
  return cp <= it->second;
}

bool has_fuzzy_cjk_run(std::string_view text, std::size_t min_run, const CjkRanges& ranges) {
  if (min_run == 0) min_run = 1;
  std::size_t run = 0;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    if (ranges.contains(cp)) {
      if (++run >= min_run) return true;
    } else {
      run = 0;
    }
  }
  return false;
}

UrlBlocklist UrlBlocklist::parse(std::string_view contents) {
  UrlBlocklist bl;
  for (std::string_view raw : utf8::split_lines(contents)) {
    std::string_view line = utf8::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::set<std::string>* target = &bl.exact_hosts;
    if (line.starts_with("host:")) {
      line.remove_prefix(5);
    } else if (line.starts_with("suffix:")) {
      line.remove_prefix(7);
      target = &bl.host_suffixes;
    } else if (line.starts_with("sub:")) {
      line.remove_prefix(4);
      target = &bl.substrings;
    }
    line = utf8::trim(line);
    if (line.empty()) continue;
    std::string entry = utf8::ascii_lower(line);
    if (target == &bl.host_suffixes && entry.front() != '.') entry.insert(entry.begin(), '.');
    target->insert(std::move(entry));
  }
  return bl;
}

UrlBlocklist UrlBlocklist::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read blocklist " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string url_host(std::string_view url) {
  url = utf8::trim(url);
  if (url.empty()) return {};
  for (unsigned char c : url) {
    if (c <= 0x20 || c == 0x7F) return {};
  }
  if (const auto sep = url.find("://"); sep != std::string_view::npos) {
    const std::string_view scheme = url.substr(0, sep);
    if (scheme.empty() || !std::isalpha(static_cast<unsigned char>(scheme.front()))) return {};
    for (unsigned char c : scheme) {
      if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return {};
    }
    url.remove_prefix(sep + 3);
  } else if (url.starts_with("//")) {
    url.remove_prefix(2);
  }
  std::string_view authority = url.substr(0, url.find_first_of("/?#"));
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);

  std::string_view host = authority;
  const bool bracketed = host.starts_with('[');
  if (bracketed) {
    const auto close = host.find(']');
    if (close == std::string_view::npos) return {};
    const std::string_view after = host.substr(close + 1);
    if (!after.empty() && !after.starts_with(':')) return {};
    host = host.substr(0, close + 1);
  } else if (const auto colon = host.rfind(':'); colon != std::string_view::npos) {
    const std::string_view port = host.substr(colon + 1);
    if (!std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); })) return {};
    host = host.substr(0, colon);
  }
  while (host.ends_with('.')) host.remove_suffix(1);
  if (host.empty()) return {};
  for (unsigned char c : host) {
    if (c >= 0x80 || std::isalnum(c) || c == '.' || c == '-' || c == '_') continue;
    if (bracketed && (c == '[' || c == ']' || c == ':')) continue;
    return {};
  }
  return utf8::ascii_lower(host);
}

bool url_blocked(std::string_view url, const UrlBlocklist& blocklist) {
  const std::string host = url_host(url);
  if (host.empty()) return true;
  if (blocklist.exact_hosts.contains(host)) return true;
  for (const std::string& suffix : blocklist.host_suffixes) {
    if (host.ends_with(suffix)) return true;
  }
  if (!blocklist.substrings.empty()) {
    const std::string lowered = utf8::ascii_lower(url);
    for (const std::string& sub : blocklist.substrings) {
      if (lowered.find(sub) != std::string::npos) return true;
    }
  }
  return false;
}

namespace {

std::string charset_from(std::string_view header_like) {
  const std::string lowered = utf8::ascii_lower(header_like);
  const auto pos = lowered.find("charset");
  if (pos == std::string::npos) return {};
  std::size_t i = pos + 7;
  while (i < lowered.size() && (lowered[i] == ' ' || lowered[i] == '=' || lowered[i] == '"' || lowered[i] == '\'')) ++i;
  std::string cs;
  while (i < lowered.size()) {
    const char c = lowered[i];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.') {
      cs.push_back(c);
      ++i;
    } else {
      break;
    }
  }
  return cs;
}

bool is_utf8_name(std::string_view cs) { return cs == "utf-8" || cs == "utf8"; }

// Converts with iconv, replacing undecodable bytes with U+FFFD. Returns
// false if the charset is unknown to iconv.
bool iconv_to_utf8(std::string_view input, const std::string& charset, std::string& out) {
  iconv_t cd = iconv_open("UTF-8", charset.c_str());
  if (cd == reinterpret_cast<iconv_t>(-1)) return false;
  out.clear();
  char* in_ptr = const_cast<char*>(input.data());
  std::size_t in_left = input.size();
  std::string buf(4096, '\0');
  while (in_left > 0) {
    char* out_ptr = buf.data();
    std::size_t out_left = buf.size();
    const std::size_t rc = iconv(cd, &in_ptr, &in_left, &out_ptr, &out_left);
    out.append(buf.data(), buf.size() - out_left);
    if (rc == static_cast<std::size_t>(-1)) {
      if (errno == E2BIG) continue;
      // EILSEQ or EINVAL: emit a replacement and skip one byte.
      utf8::append(out, utf8::kReplacement);
      ++in_ptr;
      --in_left;
      iconv(cd, nullptr, nullptr, nullptr, nullptr);
    }
  }
  iconv_close(cd);
  return true;
}

}  // namespace

std::string decode_payload(std::string_view payload, std::string_view content_type) {
  std::string charset = charset_from(content_type);
  if (charset.empty()) {
    const std::string_view head = payload.substr(0, 2048);
    const std::string lowered = utf8::ascii_lower(head);
    if (const auto meta = lowered.find("<meta"); meta != std::string::npos) {
      charset = charset_from(std::string_view(lowered).substr(meta));
    }
  }
  if (!charset.empty() && !is_utf8_name(charset)) {
    std::string out;
    if (iconv_to_utf8(payload, charset, out)) return utf8::sanitize(out);
  }
  return utf8::sanitize(payload);
}

FilterVerdict prefilter_document(const RawRecord& record, const UrlBlocklist& blocklist,
                                 std::size_t min_run, const CjkRanges& ranges) {
  if (url_blocked(record.target_url, blocklist)) return FilterVerdict::Remove(Reason::kUrlBlocked);
  const std::string text = decode_payload(record.payload, record.content_type);
  if (!has_fuzzy_cjk_run(text, min_run, ranges)) return FilterVerdict::Remove(Reason::kNoCjkRun);
  return FilterVerdict::Keep();
}

}  // namespace twc
