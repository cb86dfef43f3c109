#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twc/aho_corasick.hpp"
#include "twc/document.hpp"

namespace twc {

struct LanguageScore {
  std::string language;
  double confidence = 0.0;  // in [0, 1]

  bool operator==(const LanguageScore&) const = default;
};

// Statistical language identifier. Implementations may keep per-call state;
// the pipeline creates one instance per worker.
class LanguageScorer {
 public:
  virtual ~LanguageScorer() = default;
  virtual LanguageScore score(std::string_view text) = 0;
};

using ScorerFactory = std::function<std::unique_ptr<LanguageScorer>()>;

// Returns the same answer for every input.
class FixedScorer final : public LanguageScorer {
 public:
  FixedScorer(std::string language, double confidence) : result_{std::move(language), confidence} {}
  LanguageScore score(std::string_view) override { return result_; }

 private:
  LanguageScore result_;
};

// Model-free fallback: classifies by the share of letters in each script.
// Han-dominant text is "zh" unless kana make up a fifth of the Han+kana
// letters, which makes it "ja". Confidence is the winning script's share
// of all letters (digits, punctuation and symbols are ignored).
class ScriptScorer final : public LanguageScorer {
 public:
  LanguageScore score(std::string_view text) override;
};

// Multinomial naive Bayes over codepoint unigrams and bigrams, loaded from
// a plain-text model file:
//
//   #twcorpus-ngram-model v1
//   <label>\t__prior__\t<log prior>
//   <label>\t__unk__\t<log prob of an unseen n-gram>
//   <label>\t<ngram>\t<log prob>
//
// Confidence is the posterior of the top label. The model is immutable and
// shared between workers.
class NgramModel {
 public:
  // Throws ScorerUnavailable when the file is missing or malformed.
  static std::shared_ptr<const NgramModel> load(const std::filesystem::path& path);
  static std::shared_ptr<const NgramModel> parse(std::string_view contents);

  LanguageScore score(std::string_view text) const;
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> log_prior_;
  std::vector<double> log_unk_;
  std::unordered_map<std::string, std::vector<double>> log_prob_;  // ngram -> per label
};

class NgramModelScorer final : public LanguageScorer {
 public:
  explicit NgramModelScorer(std::shared_ptr<const NgramModel> model) : model_(std::move(model)) {}
  LanguageScore score(std::string_view text) override { return model_->score(text); }

 private:
  std::shared_ptr<const NgramModel> model_;
};

// Builds a per-worker scorer factory: the n-gram model at `model_path`, or
// the ScriptScorer when the path is empty. Throws ScorerUnavailable.
ScorerFactory make_scorer_factory(const std::filesystem::path& model_path);

// Script discrimination data. Character sets must be disjoint.
class ScriptProfile {
 public:
  ScriptProfile() = default;
  // Throws ConfigInvalid if the character sets intersect or a phrase is empty.
  ScriptProfile(std::unordered_set<char32_t> simplified_exclusive,
                std::unordered_set<char32_t> traditional_exclusive,
                std::vector<std::string> blocked_phrases);

  // Small built-in lists derived from standard Traditional/Simplified
  // mapping tables.
  static const ScriptProfile& builtin();
  // Each file: one entry per line, '#' comment lines. The character files
  // may hold several characters per line; every codepoint is an entry.
  static ScriptProfile load(const std::filesystem::path& simplified_chars,
                            const std::filesystem::path& traditional_chars,
                            const std::filesystem::path& blocked_phrases);

  const std::unordered_set<char32_t>& simplified_exclusive() const { return simplified_; }
  const std::unordered_set<char32_t>& traditional_exclusive() const { return traditional_; }
  const std::vector<std::string>& blocked_phrases() const { return phrases_; }
  const AhoCorasick& phrase_matcher() const { return matcher_; }

 private:
  std::unordered_set<char32_t> simplified_;
  std::unordered_set<char32_t> traditional_;
  std::vector<std::string> phrases_;
  AhoCorasick matcher_;
};

// Single pass over `text` regardless of the number of phrases.
bool contains_blocked_phrase(std::string_view text, const ScriptProfile& profile);

// Simplified-exclusive count / max(1, simplified + traditional exclusive count).
double simplified_char_fraction(std::string_view text, const ScriptProfile& profile);

struct LangIdConfig {
  std::string language = "zh";
  double min_confidence = 0.65;
  double max_simplified_fraction = 0.0;
};

// Scorer gate, then script gate, then phrase gate. Empty text scores 0.
// Annotates doc.meta with "lang" and "lang_score", plus "removal_reason"
// when removed.
FilterVerdict identify(Document& doc, LanguageScorer& scorer, const ScriptProfile& profile,
                       const LangIdConfig& config = {});

// Formats a ratio for document metadata with fixed precision.
std::string format_metric(double v);

}  // namespace twc
