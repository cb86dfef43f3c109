#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace twc::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes UTF-8, substituting U+FFFD for every ill-formed subsequence
// (maximal-subpart policy). NUL bytes are dropped.
std::u32string decode(std::string_view bytes);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// Re-encodes `bytes` so the result is well-formed UTF-8 without NULs.
std::string sanitize(std::string_view bytes);

// Number of codepoints; ill-formed sequences count one per replacement.
std::size_t length(std::string_view bytes);

// Iterates codepoints without allocating. `next` returns false at end.
class Cursor {
 public:
  explicit Cursor(std::string_view bytes) : bytes_(bytes) {}
  bool next(char32_t& cp);
  std::size_t offset() const { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

// Unicode White_Space property.
bool is_space(char32_t cp);

// Horizontal whitespace: is_space minus line separators.
bool is_horizontal_space(char32_t cp);

// CJK Unified Ideographs block, U+4E00..U+9FFF.
inline bool is_cjk_ideograph(char32_t cp) { return cp >= 0x4E00 && cp <= 0x9FFF; }

std::string_view trim(std::string_view s);
std::u32string_view trim(std::u32string_view s);

// Splits on LF only. "a\nb\n" yields {"a", "b", ""}; "" yields {""}.
std::vector<std::string_view> split_lines(std::string_view text);

// ASCII-only lowercase; all other bytes are left as-is.
std::string ascii_lower(std::string_view s);

}  // namespace twc::utf8
