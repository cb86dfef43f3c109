#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "synth.hpp"
#include "twc/aho_corasick.hpp"
#include "twc/hashing.hpp"
#include "twc/utf8.hpp"

namespace twc {
namespace {

TEST(Utf8, DecodesWellFormedText) {
  EXPECT_EQ(utf8::decode("a臺𠀋"), std::u32string({U'a', U'臺', U'\U0002000B'}));
  EXPECT_EQ(utf8::length("臺灣 ok"), 5u);
}

TEST(Utf8, ReplacesIllFormedSequences) {
  // Lone continuation byte, truncated 3-byte sequence, overlong slash.
  EXPECT_EQ(utf8::decode("\x80"), std::u32string(1, utf8::kReplacement));
  EXPECT_EQ(utf8::decode("\xE8\x87"), std::u32string(1, utf8::kReplacement));
  EXPECT_EQ(utf8::decode("\xC0\xAF"), std::u32string(2, utf8::kReplacement));
  EXPECT_EQ(utf8::sanitize(std::string("a\0b", 3)), "ab");
}

TEST(Utf8, SanitizeIsIdempotentOnRandomBytes) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (int k = 0; k < 40; ++k) s.push_back(static_cast<char>(byte(rng)));
    const std::string once = utf8::sanitize(s);
    EXPECT_EQ(utf8::sanitize(once), once);
    EXPECT_EQ(utf8::encode(utf8::decode(once)), once);
  }
}

TEST(Utf8, WhitespaceMatchesOracle) {
  for (char32_t c = 0; c < 0x3100; ++c) EXPECT_EQ(utf8::is_space(c), oracle::is_white_space(c)) << std::hex << static_cast<unsigned>(c);
}

TEST(Utf8, TrimAndSplit) {
  EXPECT_EQ(utf8::trim("　 臺灣\t\n"), "臺灣");
  EXPECT_EQ(utf8::trim("   "), "");
  const auto lines = utf8::split_lines("a\nb\n");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[2], "");
  EXPECT_EQ(utf8::split_lines("").size(), 1u);
}

TEST(Hashing, Sha1KnownVector) {
  EXPECT_EQ(sha1_hex("abc"), "a9993e364706816aba3e25717850c26c9cd0d89d");
}

TEST(Hashing, SeedChangesHash) {
  EXPECT_NE(hash_bytes("臺灣", 1), hash_bytes("臺灣", 2));
  EXPECT_EQ(hash_bytes("臺灣", 1), hash_bytes("臺灣", 1));
}

TEST(AhoCorasick, FindsOverlappingPatterns) {
  const std::vector<std::string> pats = {"he", "she", "his", "hers"};
  AhoCorasick ac(pats);
  const auto m = ac.find_all("ushers");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], (AhoCorasick::Match{0, 4}));
  EXPECT_EQ(m[1], (AhoCorasick::Match{1, 4}));
  EXPECT_EQ(m[2], (AhoCorasick::Match{3, 6}));
}

TEST(AhoCorasick, EmptyPatternsIgnored) {
  const std::vector<std::string> pats = {"", ""};
  AhoCorasick ac(pats);
  EXPECT_TRUE(ac.empty());
  EXPECT_FALSE(ac.contains_any("anything"));
}

TEST(AhoCorasick, AgreesWithNaiveScan) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pats = {"學校", "老師的", "是在", "ab", "。\n", "アカ", "{}", "一個人"};
  AhoCorasick ac(pats);
  for (int i = 0; i < 1000; ++i) {
    const std::string text = test::random_mixed_text(rng, 60);
    EXPECT_EQ(ac.contains_any(text), oracle::contains_any(text, pats)) << text;
    std::size_t naive = 0;
    for (const auto& p : pats) {
      for (std::size_t k = text.find(p); k != std::string::npos; k = text.find(p, k + 1)) ++naive;
    }
    EXPECT_EQ(ac.find_all(text).size(), naive);
  }
}

}  // namespace
}  // namespace twc
