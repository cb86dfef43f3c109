#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twc/document.hpp"

namespace twc {

// Uniform draw from [0, bound) without modulo bias.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Single-pass uniform sample of at most `capacity` items (Algorithm R).
template <typename T>
class ReservoirSampler {
 public:
  ReservoirSampler(std::size_t capacity, std::uint64_t seed) : capacity_(capacity), rng_(seed) {}

  void add(T item) {
    ++seen_;
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
      return;
    }
    const std::uint64_t j = uniform_below(rng_, seen_);
    if (j < capacity_) items_[j] = std::move(item);
  }

  std::size_t seen() const { return seen_; }
  std::vector<T> take() { return std::move(items_); }

 private:
  std::size_t capacity_;
  std::mt19937_64 rng_;
  std::size_t seen_ = 0;
  std::vector<T> items_;
};

// min(n, corpus size) documents from a JSONL corpus; deterministic given
// the seed. An empty corpus yields an empty list and a warning.
std::vector<Document> sample_documents(std::istream& jsonl, std::size_t n = 1000, std::uint64_t seed = 1);
std::vector<Document> sample_documents(const std::filesystem::path& jsonl, std::size_t n = 1000,
                                       std::uint64_t seed = 1);

// The judging prompt. The document text replaces the single placeholder
// line; everything else is emitted as written in the template file.
class RubricTemplate {
 public:
  static constexpr std::string_view kPlaceholder = "< 待評估的文本 >";

  // Throws ConfigInvalid unless the placeholder occurs exactly once.
  explicit RubricTemplate(std::string text);
  static RubricTemplate load(const std::filesystem::path& path);
  // The template shipped in data/rubric_zh.txt.
  static const RubricTemplate& builtin();

  std::string render(std::string_view document_text) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::size_t placeholder_at_;
};

// Throws Error when doc.text is empty.
std::string render_rubric_prompt(const Document& doc, const RubricTemplate& tmpl = RubricTemplate::builtin());

struct ScoreCard {
  std::string doc_id;
  int naturalness = 0;
  int educational = 0;
  int sensitivity = 0;
  int total = 0;

  bool operator==(const ScoreCard&) const = default;
};

inline constexpr std::array<std::string_view, 3> kCriterionLabels = {"繁體中文與語言自然性", "教育價值", "敏感內容"};
inline constexpr std::string_view kTotalLabel = "總分";

// A response in the rubric's scoring format.
std::string format_score_response(const ScoreCard& card);

struct ParsedScores {
  ScoreCard card;
  std::optional<int> stated_total;  // as written in the response, if any
  bool total_disagrees = false;
};

// Reads the three criterion lines and the total line. Fullwidth digits and
// colons are accepted. The total is always recomputed from the criteria.
// Throws UnparsableResponse when a criterion line is missing or a score is
// outside [0, 5].
ParsedScores parse_scores_detailed(std::string_view response, std::string_view doc_id);
// As above; logs a warning when the stated total disagrees.
ScoreCard parse_scores(std::string_view response, std::string_view doc_id);

struct TTestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;
  double df = 0.0;
  bool reject_at_005 = false;
};

enum class TTestVariant { kWelch, kPooled };

// Two-sided two-sample t-test. Throws InsufficientSamples when either
// sample has fewer than two values and DegenerateVariance when either has
// zero variance.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);
TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b);
TTestResult t_test(std::span<const double> a, std::span<const double> b, TTestVariant variant);

// "t = 5.36 (p = 9.14e-08)"
std::string format_t_result(const TTestResult& r);

inline constexpr std::array<std::string_view, 4> kMeasures = {"naturalness", "educational", "sensitivity", "total"};

struct StageScores {
  std::string stage;
  std::vector<ScoreCard> cards;
};

struct StageSummary {
  std::string stage;
  std::size_t n = 0;
  std::array<double, 4> means{};  // in kMeasures order
};

struct PairTest {
  std::string a;
  std::string b;
  std::string measure;
  std::optional<TTestResult> result;  // empty when untested
  std::string error;                  // why the pair is untested
};

struct ComparisonReport {
  std::vector<StageSummary> stages;
  std::vector<PairTest> pairs;
};

// Every pair of stages (in input order) times every measure. A failing pair
// is marked untested and does not affect the others. Throws
// InsufficientSamples for fewer than two stages.
ComparisonReport compare_stages(std::span<const StageScores> stages, TTestVariant variant = TTestVariant::kWelch);

// {stages: {name: {n, means: {...}}}, pairs: [{a, b, measure, t, p, df, reject}]}
std::string comparison_to_json(const ComparisonReport& report);
std::string render_comparison_table(const ComparisonReport& report);

// prompts.jsonl: one {"doc_id", "prompt"} object per line.
void write_prompts_jsonl(std::span<const Document> docs, const RubricTemplate& tmpl, std::ostream& out);

struct ResponseRecord {
  std::string doc_id;
  std::string response;
};

// responses.jsonl: one {"doc_id", "response"} object per line. Throws
// MalformedLine.
std::vector<ResponseRecord> read_responses_jsonl(std::istream& in);

struct ScoredResponses {
  std::vector<ScoreCard> cards;
  std::size_t unparsable = 0;
  std::size_t total_disagreements = 0;
};

// Unparsable responses are excluded and counted, never scored as zero.
ScoredResponses score_responses(std::span<const ResponseRecord> responses);

}  // namespace twc
