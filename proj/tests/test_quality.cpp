#include <gtest/gtest.h>

#include <random>

#include "boundary_cases.hpp"
#include "oracles.hpp"
#include "synth.hpp"
#include "twc/error.hpp"
#include "twc/quality.hpp"

namespace twc {
namespace {

class Boundary : public ::testing::TestWithParam<test::BoundaryCase> {};

TEST_P(Boundary, StraddlesThreshold) {
  const test::BoundaryCase& c = GetParam();
  const FilterVerdict v = test::evaluate(c, QualityConfig{});
  EXPECT_EQ(v.keep(), c.expect_keep);
  EXPECT_EQ(v.reason(), c.expected_reason) << reason_name(v.reason());
}

INSTANTIATE_TEST_SUITE_P(Thresholds, Boundary, ::testing::ValuesIn(test::boundary_cases()),
                         [](const auto& info) { return info.param.name; });

TEST(WordCount, CjkPerCharacterOtherPerToken) {
  EXPECT_EQ(word_count(""), 0u);
  EXPECT_EQ(word_count("臺灣"), 2u);
  EXPECT_EQ(word_count("hello world"), 2u);
  EXPECT_EQ(word_count("我用iPhone拍照"), 4u);
  EXPECT_EQ(word_count("  2024 年 ， ok "), 4u);
  EXPECT_EQ(word_count("ひらがな"), 1u);
}

TEST(SymbolCount, NonOverlapping) {
  EXPECT_EQ(symbol_count("a...... b…", {"...", "…"}), 3u);
  EXPECT_EQ(symbol_count("####", {"##"}), 2u);
  EXPECT_EQ(symbol_count("abc", {""}), 0u);
}

TEST(EllipsisLines, CountsNonBlankLines) {
  EXPECT_DOUBLE_EQ(ellipsis_line_ratio("一…\n\n  \n二。\n三...  ", {"…", "..."}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(ellipsis_line_ratio("", {"…"}), 0.0);
}

TEST(Gopher, RequiresStopWord) {
  QualityConfig cfg;
  cfg.min_words = 2;
  EXPECT_EQ(gopher_filter(test::make_doc("a", "臺北車站"), cfg).reason(), Reason::kNoStopWords);
  EXPECT_TRUE(gopher_filter(test::make_doc("a", "臺北的車站"), cfg).keep());
}

TEST(Gopher, VerdictCarriesMetric) {
  const FilterVerdict v = gopher_filter(test::make_doc("a", "的的的"), QualityConfig{});
  EXPECT_EQ(v.reason(), Reason::kTooShort);
  EXPECT_EQ(v.metric_value(), 3.0);
}

TEST(C4, DropsCodeAndPolicyLines) {
  QualityConfig cfg;
  // Long enough that the four brackets stay under the bracket ratio.
  std::string body;
  for (int i = 0; i < 200; ++i) body += "內容";
  const Document d = test::make_doc("a",
                                    body + "。\n"
                                    "function f() { return 1; }\n"
                                    "請啟用 JavaScript 以瀏覽。\n"
                                    "本站隱私權政策說明。\n"
                                    "Read our Privacy Policy.\n"
                                    "最後一行。");
  const C4Result r = c4_document_filter(d, cfg);
  EXPECT_TRUE(r.verdict.keep());
  EXPECT_EQ(r.cleaned_text, body + "。\n最後一行。");
  EXPECT_FALSE(c4_line_filter("{", cfg));
  EXPECT_TRUE(c4_line_filter("", cfg));
}

TEST(C4, RemovalLeavesTextUnchanged) {
  const Document d = test::make_doc("a", "【】【】");
  const C4Result r = c4_document_filter(d, QualityConfig{});
  EXPECT_EQ(r.verdict.reason(), Reason::kBracketRatio);
  EXPECT_EQ(r.cleaned_text, d.text);
}

TEST(LineStats, WorkedExample) {
  const QualityConfig cfg;
  const LineStats st = line_stats("重複的一行文字內容。\n短行\n\n重複的一行文字內容。\n 另一行沒有標點符號的文字 \n", cfg);
  EXPECT_EQ(st.lines, 4u);
  EXPECT_EQ(st.punctuated_lines, 2u);
  EXPECT_EQ(st.short_lines, 1u);
  EXPECT_EQ(st.total_chars, 10u + 2u + 10u + 12u);
  EXPECT_EQ(st.duplicated_chars, 20u);
  EXPECT_EQ(st.newlines, 5u);
}

TEST(NewLineRatio, DenominatorIsConfigurable) {
  QualityConfig cfg;
  EXPECT_DOUBLE_EQ(new_line_ratio("臺灣\nab cd", cfg), 1.0 / 4.0);
  cfg.new_line_denominator = NewLineDenominator::kCodepoints;
  EXPECT_DOUBLE_EQ(new_line_ratio("臺灣\nab cd", cfg), 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(new_line_ratio("", cfg), 0.0);
}

TEST(FineWeb, EmptyTextFailsPunctuation) {
  EXPECT_EQ(fineweb_filter(test::make_doc("a", ""), QualityConfig{}).reason(), Reason::kLinePunctRatio);
}

TEST(QualityConfig, Validation) {
  QualityConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.min_words = 0;
  EXPECT_THROW(cfg.validate(), ConfigInvalid);
  cfg = QualityConfig{};
  cfg.max_char_dup_ratio = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigInvalid);
  cfg = QualityConfig{};
  cfg.stop_words.clear();
  EXPECT_THROW(cfg.validate(), ConfigInvalid);
}

TEST(OracleEquivalence, RandomStrings) {
  std::mt19937_64 rng(2024);
  const QualityConfig cfg;
  for (int i = 0; i < 1000; ++i) {
    const std::string text = test::random_mixed_text(rng, 200);
    ASSERT_EQ(word_count(text), oracle::word_count(text)) << text;
    ASSERT_EQ(bracket_ratio(text), oracle::bracket_ratio(text)) << text;
    ASSERT_EQ(symbol_count(text, cfg.symbols), oracle::symbol_count(text, cfg.symbols)) << text;
    ASSERT_EQ(ellipsis_line_ratio(text, cfg.ellipsis_forms), oracle::ellipsis_line_ratio(text, cfg.ellipsis_forms));
    const LineStats st = line_stats(text, cfg);
    const oracle::Lines o = oracle::line_stats(text, cfg.terminal_punctuation, cfg.short_line_char_threshold);
    ASSERT_EQ(st.lines, o.lines) << text;
    ASSERT_EQ(st.punctuated_lines, o.punctuated) << text;
    ASSERT_EQ(st.short_lines, o.short_lines) << text;
    ASSERT_EQ(st.total_chars, o.total_chars) << text;
    ASSERT_EQ(st.duplicated_chars, o.duplicated_chars) << text;
    ASSERT_EQ(st.newlines, o.newlines) << text;
  }
}

}  // namespace
}  // namespace twc
