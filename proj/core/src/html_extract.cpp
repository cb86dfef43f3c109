// Error-tolerant main-content extractor.
//
// A single forward scan over the markup keeps a stack of open elements.
// Text is collected only while at least one content block (p, li, td, ...)
// is open and no excluded element (script, nav, footer, ...) encloses it.
// Every block boundary ends the current output line. A line is dropped when
// it is empty, sits outside any content block, or consists only of link
// text, because those cannot be told apart from navigation.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twc/prefilter.hpp"
#include "twc/utf8.hpp"

namespace twc {
namespace {

template <std::size_t N>
bool in_set(std::string_view name, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

constexpr std::array<std::string_view, 16> kExcluded = {
    "script", "style",  "nav",    "header", "footer",   "aside",  "form",   "noscript",
    "template", "svg",  "iframe", "select", "textarea", "button", "head",   "object"};

constexpr std::array<std::string_view, 5> kRawText = {"script", "style", "textarea", "title", "template"};

constexpr std::array<std::string_view, 20> kContentBlocks = {
    "p",  "h1", "h2",         "h3",      "h4",      "h5",      "h6",   "li",      "blockquote", "pre",
    "td", "th", "dd",         "dt",      "figcaption", "article", "section", "main", "div",     "caption"};

constexpr std::array<std::string_view, 17> kOtherBlocks = {
    "html", "body", "address", "details", "dialog", "dl",    "fieldset", "figure", "hr",
    "ol",   "ul",   "table",   "tbody",   "thead",  "tfoot", "tr",       "summary"};

constexpr std::array<std::string_view, 14> kVoid = {"area", "base", "br",    "col",   "embed", "hr",    "img",
                                                    "input", "link", "meta", "param", "source", "track", "wbr"};

bool is_excluded(std::string_view n) { return in_set(n, kExcluded); }
bool is_content_block(std::string_view n) { return in_set(n, kContentBlocks); }
bool is_block(std::string_view n) {
  return is_content_block(n) || in_set(n, kOtherBlocks) || is_excluded(n) || n == "br";
}

struct Entity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<Entity, 20> kEntities = {{
    {"amp", U'&'},     {"lt", U'<'},      {"gt", U'>'},      {"quot", U'"'},    {"apos", U'\''},
    {"nbsp", 0xA0},    {"copy", 0xA9},    {"reg", 0xAE},     {"hellip", 0x2026}, {"mdash", 0x2014},
    {"ndash", 0x2013}, {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D},
    {"middot", 0xB7},  {"times", 0xD7},   {"ensp", 0x2002},  {"emsp", 0x2003},  {"thinsp", 0x2009},
}};

// Decodes the entity at s[pos] == '&'. On success stores the codepoint and
// the consumed length.
bool decode_entity(std::string_view s, std::size_t pos, char32_t& cp, std::size_t& len) {
  const std::size_t semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12) return false;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return false;
  if (body.front() == '#') {
    std::uint32_t v = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty()) return false;
    for (char c : digits) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return false;
      v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
      if (v > 0x10FFFF) return false;
    }
    cp = (v == 0) ? utf8::kReplacement : static_cast<char32_t>(v);
    len = semi - pos + 1;
    return true;
  }
  for (const Entity& e : kEntities) {
    if (e.name == body) {
      cp = e.cp;
      len = semi - pos + 1;
      return true;
    }
  }
  return false;
}

std::string lower_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':') {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      break;
    }
  }
  return out;
}

// Finds the '>' ending a tag that starts at `pos`, honouring quoted
// attribute values. Returns npos when unterminated.
std::size_t tag_end(std::string_view s, std::size_t pos) {
  char quote = 0;
  for (std::size_t i = pos; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      // Quotes only delimit values after '='.
      std::size_t j = i;
      while (j > pos && (s[j - 1] == ' ' || s[j - 1] == '\t' || s[j - 1] == '\n' || s[j - 1] == '\r')) --j;
      if (j > pos && s[j - 1] == '=') quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string_view::npos;
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(hay[i + k])) != needle[k]) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::string_view::npos;
}

class Extractor {
 public:
  std::string run(std::string_view html) {
    std::size_t pos = 0;
    while (pos < html.size()) {
      if (html[pos] != '<') {
        const std::size_t next = html.find('<', pos);
        text(html.substr(pos, (next == std::string_view::npos ? html.size() : next) - pos));
        pos = (next == std::string_view::npos) ? html.size() : next;
        continue;
      }
      const std::string_view rest = html.substr(pos);
      if (rest.starts_with("<!--")) {
        const std::size_t end = html.find("-->", pos + 4);
        pos = (end == std::string_view::npos) ? html.size() : end + 3;
        continue;
      }
      if (rest.starts_with("<!") || rest.starts_with("<?")) {
        const std::size_t end = html.find('>', pos);
        pos = (end == std::string_view::npos) ? html.size() : end + 1;
        continue;
      }
      const bool closing = rest.size() > 1 && rest[1] == '/';
      const std::size_t name_at = pos + (closing ? 2 : 1);
      if (name_at >= html.size() || !std::isalpha(static_cast<unsigned char>(html[name_at]))) {
        text(html.substr(pos, 1));
        ++pos;
        continue;
      }
      const std::size_t end = tag_end(html, name_at);
      if (end == std::string_view::npos) break;  // unterminated tag: drop the tail
      const std::string name = lower_name(html.substr(name_at, end - name_at));
      const bool self_closing = end > pos && html[end - 1] == '/';
      pos = end + 1;
      if (closing) {
        close_tag(name);
        continue;
      }
      open_tag(name, self_closing);
      if (in_set(std::string_view(name), kRawText) && !self_closing) {
        const std::string closer = "</" + name;
        const std::size_t close_at = find_ci(html, closer, pos);
        if (close_at == std::string_view::npos) {
          pos = html.size();
        } else {
          const std::size_t gt = html.find('>', close_at);
          pos = (gt == std::string_view::npos) ? html.size() : gt + 1;
        }
        close_tag(name);
      }
    }
    flush();
    std::string out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i) out.push_back('\n');
      out += lines_[i];
    }
    return out;
  }

 private:
  struct Open {
    std::string name;
    bool excluded;
    bool content;
  };

  bool collecting() const { return excluded_depth_ == 0 && content_depth_ > 0; }

  void open_tag(const std::string& name, bool self_closing) {
    if (name == "br") {
      flush();
      return;
    }
    if (is_block(name)) flush();
    if (in_set(std::string_view(name), kVoid) || self_closing) return;
    // Implied end tags for the common unclosed cases.
    if (!stack_.empty()) {
      const std::string& top = stack_.back().name;
      const bool same_kind = (top == name) || ((top == "td" || top == "th") && (name == "td" || name == "th")) ||
                             ((top == "dt" || top == "dd") && (name == "dt" || name == "dd"));
      if (same_kind && (name == "p" || name == "li" || name == "td" || name == "th" || name == "dt" ||
                        name == "dd" || name == "tr" || name == "option")) {
        pop();
      }
    }
    if (stack_.size() >= kMaxDepth) return;
    Open o{name, is_excluded(name), is_content_block(name)};
    if (o.excluded) ++excluded_depth_;
    if (o.content) ++content_depth_;
    if (name == "a") ++anchor_depth_;
    if (name == "pre") ++pre_depth_;
    stack_.push_back(std::move(o));
  }

  void close_tag(const std::string& name) {
    if (name == "br") {
      flush();
      return;
    }
    auto it = std::find_if(stack_.rbegin(), stack_.rend(), [&](const Open& o) { return o.name == name; });
    if (it == stack_.rend()) return;
    if (is_block(name)) flush();
    const std::size_t keep = static_cast<std::size_t>(stack_.rend() - it) - 1;
    while (stack_.size() > keep) pop();
  }

  void pop() {
    const Open& o = stack_.back();
    if (is_block(o.name)) flush();
    if (o.excluded) --excluded_depth_;
    if (o.content) --content_depth_;
    if (o.name == "a") --anchor_depth_;
    if (o.name == "pre") --pre_depth_;
    stack_.pop_back();
  }

  void text(std::string_view raw) {
    if (!collecting()) return;
    std::size_t i = 0;
    while (i < raw.size()) {
      char32_t cp;
      if (raw[i] == '&') {
        std::size_t len = 0;
        if (decode_entity(raw, i, cp, len)) {
          i += len;
          put(cp);
          continue;
        }
      }
      std::size_t j = i + 1;
      while (j < raw.size() && (static_cast<unsigned char>(raw[j]) & 0xC0) == 0x80) ++j;
      utf8::Cursor cur(raw.substr(i, j - i));
      while (cur.next(cp)) put(cp);
      i = j;
    }
  }

  void put(char32_t cp) {
    if (pre_depth_ > 0 && cp == U'\n') {
      flush();
      return;
    }
    if (utf8::is_space(cp)) {
      pending_space_ = !line_.empty();
      return;
    }
    if (pending_space_) {
      line_.push_back(' ');
      pending_space_ = false;
    }
    utf8::append(line_, cp);
    if (anchor_depth_ > 0) {
      ++anchor_chars_;
    } else {
      ++plain_chars_;
    }
  }

  void flush() {
    if (!line_.empty() && plain_chars_ > 0) lines_.push_back(line_);
    line_.clear();
    pending_space_ = false;
    plain_chars_ = anchor_chars_ = 0;
  }

  static constexpr std::size_t kMaxDepth = 1024;

  std::vector<Open> stack_;
  int excluded_depth_ = 0;
  int content_depth_ = 0;
  int anchor_depth_ = 0;
  int pre_depth_ = 0;
  std::string line_;
  bool pending_space_ = false;
  std::size_t plain_chars_ = 0;
  std::size_t anchor_chars_ = 0;
  std::vector<std::string> lines_;
};

}  // namespace

std::string extract_main_text(std::string_view html) { return Extractor().run(html); }

}  // namespace twc
