#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "synth.hpp"
#include "twc/error.hpp"
#include "twc/langid.hpp"

namespace twc {
namespace {

TEST(ScriptScorer, ClassifiesByScriptShare) {
  ScriptScorer s;
  const LanguageScore zh = s.score("我們的學校 123 ！");
  EXPECT_EQ(zh.language, "zh");
  EXPECT_DOUBLE_EQ(zh.confidence, 1.0);
  EXPECT_EQ(s.score("これはテストです。日本").language, "ja");
  EXPECT_EQ(s.score("한국어 문장입니다").language, "ko");
  EXPECT_EQ(s.score("plain english words here 中文").language, "en");
  EXPECT_EQ(s.score("12345 !!!"), (LanguageScore{"und", 0.0}));
  // 2 Han of 4 letters.
  EXPECT_DOUBLE_EQ(s.score("臺灣ab").confidence, 0.5);
}

TEST(ScriptProfile, BuiltinListsAreDisjointAndNonEmpty) {
  const ScriptProfile& p = ScriptProfile::builtin();
  EXPECT_FALSE(p.simplified_exclusive().empty());
  EXPECT_FALSE(p.traditional_exclusive().empty());
  for (char32_t c : p.simplified_exclusive()) EXPECT_FALSE(p.traditional_exclusive().contains(c));
  EXPECT_TRUE(p.simplified_exclusive().contains(U'们'));
  EXPECT_TRUE(p.traditional_exclusive().contains(U'們'));
}

TEST(ScriptProfile, RejectsOverlapAndEmptyPhrases) {
  EXPECT_THROW(ScriptProfile({U'门'}, {U'门'}, {}), ConfigInvalid);
  EXPECT_THROW(ScriptProfile({U'门'}, {U'門'}, {""}), ConfigInvalid);
}

TEST(ScriptProfile, LoadsFromFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "twc_profile_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "s.txt") << "# comment\n门们\n";
  std::ofstream(dir / "t.txt") << "門\n";
  std::ofstream(dir / "p.txt") << "甲乙\n";
  const ScriptProfile p = ScriptProfile::load(dir / "s.txt", dir / "t.txt", dir / "p.txt");
  EXPECT_EQ(p.simplified_exclusive().size(), 2u);
  EXPECT_TRUE(contains_blocked_phrase("丙甲乙丁", p));
  EXPECT_THROW(ScriptProfile::load(dir / "missing.txt", dir / "t.txt", dir / "p.txt"), ConfigInvalid);
  std::filesystem::remove_all(dir);
}

TEST(SimplifiedFraction, CountsExclusiveCharactersOnly) {
  const ScriptProfile p({U'门', U'们'}, {U'門', U'們'}, {});
  EXPECT_DOUBLE_EQ(simplified_char_fraction("沒有任何標記", p), 0.0);
  EXPECT_DOUBLE_EQ(simplified_char_fraction("门們", p), 0.5);
  EXPECT_DOUBLE_EQ(simplified_char_fraction("们门門", p), 2.0 / 3.0);
}

TEST(Identify, GateOrderScorerThenScriptThenPhrase) {
  const ScriptProfile p({U'门'}, {U'門'}, {"軟件"});
  Document d = test::make_doc("a", "门軟件");

  FixedScorer weak("zh", 0.5);
  EXPECT_EQ(identify(d, weak, p).reason(), Reason::kLowLangConfidence);
  EXPECT_EQ(d.meta.at("removal_reason"), "LowLangConfidence");
  EXPECT_EQ(d.meta.at("lang_score"), "0.5000");

  FixedScorer other("ja", 0.99);
  EXPECT_EQ(identify(d, other, p).reason(), Reason::kLowLangConfidence);

  FixedScorer strong("zh", 0.9);
  EXPECT_EQ(identify(d, strong, p).reason(), Reason::kSimplifiedScript);
  d.text = "門軟件";
  EXPECT_EQ(identify(d, strong, p).reason(), Reason::kBlockedPhrase);
  d = test::make_doc("b", "門戶網站");
  EXPECT_TRUE(identify(d, strong, p).keep());
  EXPECT_EQ(d.meta.at("lang"), "zh");
  EXPECT_FALSE(d.meta.contains("removal_reason"));
}

TEST(Identify, ConfidenceThresholdIsInclusive) {
  Document d = test::make_doc("a", "臺灣");
  FixedScorer at("zh", 0.65);
  EXPECT_TRUE(identify(d, at, ScriptProfile::builtin()).keep());
  FixedScorer below("zh", std::nextafter(0.65, 0.0));
  EXPECT_FALSE(identify(d, below, ScriptProfile::builtin()).keep());
}

TEST(Identify, EmptyTextScoresZero) {
  Document d = test::make_doc("a", "  \n ");
  FixedScorer s("zh", 1.0);
  const FilterVerdict v = identify(d, s, ScriptProfile::builtin());
  EXPECT_EQ(v.reason(), Reason::kLowLangConfidence);
  EXPECT_EQ(d.meta.at("lang"), "und");
}

TEST(Identify, SimplifiedToleranceIsConfigurable) {
  const ScriptProfile p({U'门'}, {U'門'}, {});
  Document d = test::make_doc("a", "门門門門");
  FixedScorer s("zh", 1.0);
  EXPECT_EQ(identify(d, s, p).reason(), Reason::kSimplifiedScript);
  LangIdConfig cfg;
  cfg.max_simplified_fraction = 0.25;
  EXPECT_TRUE(identify(d, s, p, cfg).keep());
}

TEST(NgramModel, ParsesAndScores) {
  const auto m = NgramModel::parse(
      "#twcorpus-ngram-model v1\n"
      "zh\t__prior__\t-0.6931\n"
      "en\t__prior__\t-0.6931\n"
      "zh\t__unk__\t-10\n"
      "en\t__unk__\t-10\n"
      "zh\t臺\t-1\n"
      "zh\t臺灣\t-1\n"
      "en\ta\t-1\n");
  EXPECT_EQ(m->labels(), (std::vector<std::string>{"zh", "en"}));
  const LanguageScore s = m->score("臺灣");
  EXPECT_EQ(s.language, "zh");
  EXPECT_GT(s.confidence, 0.99);
  EXPECT_EQ(m->score("aaa").language, "en");
  // No evidence: equal priors give a coin flip.
  EXPECT_DOUBLE_EQ(m->score("").confidence, 0.5);
}

TEST(NgramModel, RejectsMalformedFiles) {
  EXPECT_THROW(NgramModel::parse(""), ScorerUnavailable);
  EXPECT_THROW(NgramModel::parse("zh\ta\t-1\n"), ScorerUnavailable);
  EXPECT_THROW(NgramModel::parse("#twcorpus-ngram-model v1\nzh\ta\n"), ScorerUnavailable);
  EXPECT_THROW(NgramModel::parse("#twcorpus-ngram-model v1\nzh\ta\tnan\n"), ScorerUnavailable);
  EXPECT_THROW(make_scorer_factory("/nonexistent/model.txt"), ScorerUnavailable);
  EXPECT_EQ(make_scorer_factory("")()->score("臺灣").language, "zh");
}

}  // namespace
}  // namespace twc
