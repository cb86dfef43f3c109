#include "twc/eval.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <json.hpp>
#include <numeric>

#include "twc/builtin_data.hpp"
#include "twc/data_files.hpp"
#include "twc/error.hpp"
#include "twc/jsonl.hpp"
#include "twc/log.hpp"
#include "twc/special_functions.hpp"
#include "twc/utf8.hpp"

namespace twc {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

std::vector<Document> sample_documents(std::istream& jsonl, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample size must be at least 1");
  ReservoirSampler<Document> sampler(n, seed);
  JsonlDocumentReader reader(jsonl);
  while (auto d = reader.next()) sampler.add(std::move(*d));
  if (sampler.seen() == 0) log::warn("sample: corpus is empty");
  return sampler.take();
}

std::vector<Document> sample_documents(const std::filesystem::path& jsonl, std::size_t n, std::uint64_t seed) {
  std::ifstream in(jsonl, std::ios::binary);
  if (!in) throw Error("cannot read " + jsonl.string());
  return sample_documents(in, n, seed);
}

RubricTemplate::RubricTemplate(std::string text) : text_(std::move(text)) {
  placeholder_at_ = text_.find(kPlaceholder);
  if (placeholder_at_ == std::string::npos) throw ConfigInvalid("rubric template lacks the text placeholder");
  if (text_.find(kPlaceholder, placeholder_at_ + 1) != std::string::npos) {
    throw ConfigInvalid("rubric template has more than one text placeholder");
  }
}

RubricTemplate RubricTemplate::load(const std::filesystem::path& path) { return RubricTemplate(read_file(path)); }

const RubricTemplate& RubricTemplate::builtin() {
  static const RubricTemplate tmpl{std::string(builtin_data::kRubricTemplate)};
  return tmpl;
}

std::string RubricTemplate::render(std::string_view document_text) const {
  std::string out;
  out.reserve(text_.size() + document_text.size());
  out.append(text_, 0, placeholder_at_);
  out.append(document_text);
  out.append(text_, placeholder_at_ + kPlaceholder.size());
  return out;
}

std::string render_rubric_prompt(const Document& doc, const RubricTemplate& tmpl) {
  if (doc.text.empty()) throw Error("cannot render a prompt for an empty document: " + doc.id);
  return tmpl.render(doc.text);
}

std::string format_score_response(const ScoreCard& card) {
  const int scores[3] = {card.naturalness, card.educational, card.sensitivity};
  std::string out;
  for (int i = 0; i < 3; ++i) {
    out += std::to_string(i + 1) + ". " + std::string(kCriterionLabels[i]) + "：" + std::to_string(scores[i]) + "\n";
  }
  out += std::string(kTotalLabel) + "：" + std::to_string(card.total);
  return out;
}

namespace {

// Folds fullwidth digits and colons to ASCII.
std::string normalize_response(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  utf8::Cursor cur(s);
  char32_t cp;
  while (cur.next(cp)) {
    if (cp >= 0xFF10 && cp <= 0xFF19) {
      out.push_back(static_cast<char>('0' + (cp - 0xFF10)));
    } else if (cp == 0xFF1A) {
      out.push_back(':');
    } else {
      utf8::append(out, cp);
    }
  }
  return out;
}

bool horizontal_space(char c) { return c == ' ' || c == '\t'; }

// The integer after the first "<label> : <digits>" in `text`.
std::optional<long> labelled_value(std::string_view text, std::string_view label) {
  for (std::size_t at = text.find(label); at != std::string_view::npos; at = text.find(label, at + 1)) {
    std::size_t i = at + label.size();
    while (i < text.size() && horizontal_space(text[i])) ++i;
    if (i >= text.size() || text[i] != ':') continue;
    ++i;
    while (i < text.size() && horizontal_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && j - i < 6 && text[j] >= '0' && text[j] <= '9') ++j;
    if (j == i) continue;
    return std::stol(std::string(text.substr(i, j - i)));
  }
  return std::nullopt;
}

}  // namespace

ParsedScores parse_scores_detailed(std::string_view response, std::string_view doc_id) {
  const std::string text = normalize_response(response);
  ParsedScores out;
  out.card.doc_id = std::string(doc_id);
  int* slots[3] = {&out.card.naturalness, &out.card.educational, &out.card.sensitivity};
  for (std::size_t i = 0; i < kCriterionLabels.size(); ++i) {
    const auto v = labelled_value(text, kCriterionLabels[i]);
    if (!v) throw UnparsableResponse("no score for " + std::string(kCriterionLabels[i]) + " in response for " +
                                     std::string(doc_id));
    if (*v < 0 || *v > 5) {
      throw UnparsableResponse("score out of range for " + std::string(kCriterionLabels[i]) + " in response for " +
                               std::string(doc_id));
    }
    *slots[i] = static_cast<int>(*v);
  }
  out.card.total = out.card.naturalness + out.card.educational + out.card.sensitivity;
  if (const auto stated = labelled_value(text, kTotalLabel)) {
    out.stated_total = static_cast<int>(std::min<long>(*stated, 1000000));
    out.total_disagrees = *out.stated_total != out.card.total;
  }
  return out;
}

ScoreCard parse_scores(std::string_view response, std::string_view doc_id) {
  ParsedScores p = parse_scores_detailed(response, doc_id);
  if (p.total_disagrees) {
    log::warn("response for " + std::string(doc_id) + " states total " + std::to_string(*p.stated_total) +
              ", recomputed " + std::to_string(p.card.total));
  }
  return p.card;
}

namespace {

struct Moments {
  double n;
  double mean;
  double var;  // unbiased
};

Moments moments(std::span<const double> x) {
  if (x.size() < 2) throw InsufficientSamples("t-test needs at least two values per sample");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = ss / (n - 1.0);
  if (!(var > 0.0)) throw DegenerateVariance("t-test sample has zero variance");
  return {n, mean, var};
}

TTestResult finish(double t, double df) {
  TTestResult r;
  r.t_statistic = t;
  r.df = df;
  r.p_value = student_t_two_sided_p(t, df);
  r.reject_at_005 = r.p_value < 0.05;
  return r;
}

}  // namespace

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double va = ma.var / ma.n;
  const double vb = mb.var / mb.n;
  const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
  const double df = (va + vb) * (va + vb) / (va * va / (ma.n - 1.0) + vb * vb / (mb.n - 1.0));
  return finish(t, df);
}

TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b) {
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double df = ma.n + mb.n - 2.0;
  const double sp2 = ((ma.n - 1.0) * ma.var + (mb.n - 1.0) * mb.var) / df;
  const double t = (ma.mean - mb.mean) / std::sqrt(sp2 * (1.0 / ma.n + 1.0 / mb.n));
  return finish(t, df);
}

TTestResult t_test(std::span<const double> a, std::span<const double> b, TTestVariant variant) {
  return variant == TTestVariant::kWelch ? welch_t_test(a, b) : pooled_t_test(a, b);
}

std::string format_t_result(const TTestResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "t = %.2f (p = %.2e)", r.t_statistic, r.p_value);
  return buf;
}

namespace {

double measure_of(const ScoreCard& c, std::size_t m) {
  switch (m) {
    case 0: return c.naturalness;
    case 1: return c.educational;
    case 2: return c.sensitivity;
    default: return c.total;
  }
}

std::vector<double> column(const std::vector<ScoreCard>& cards, std::size_t m) {
  std::vector<double> out;
  out.reserve(cards.size());
  for (const ScoreCard& c : cards) out.push_back(measure_of(c, m));
  return out;
}

}  // namespace

ComparisonReport compare_stages(std::span<const StageScores> stages, TTestVariant variant) {
  if (stages.size() < 2) throw InsufficientSamples("comparison needs at least two stages");
  ComparisonReport report;
  for (const StageScores& s : stages) {
    StageSummary sum;
    sum.stage = s.stage;
    sum.n = s.cards.size();
    for (std::size_t m = 0; m < kMeasures.size(); ++m) {
      const auto col = column(s.cards, m);
      sum.means[m] = col.empty() ? std::nan("") : std::accumulate(col.begin(), col.end(), 0.0) / col.size();
    }
    report.stages.push_back(std::move(sum));
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    for (std::size_t j = i + 1; j < stages.size(); ++j) {
      for (std::size_t m = 0; m < kMeasures.size(); ++m) {
        PairTest p{stages[i].stage, stages[j].stage, std::string(kMeasures[m]), std::nullopt, {}};
        try {
          p.result = t_test(column(stages[i].cards, m), column(stages[j].cards, m), variant);
        } catch (const DegenerateVariance& e) {
          p.error = std::string("DegenerateVariance: ") + e.what();
        } catch (const InsufficientSamples& e) {
          p.error = std::string("InsufficientSamples: ") + e.what();
        }
        report.pairs.push_back(std::move(p));
      }
    }
  }
  return report;
}

std::string comparison_to_json(const ComparisonReport& report) {
  using ojson = nlohmann::ordered_json;
  ojson stages = ojson::object();
  for (const StageSummary& s : report.stages) {
    ojson means = ojson::object();
    for (std::size_t m = 0; m < kMeasures.size(); ++m) {
      means[std::string(kMeasures[m])] = std::isnan(s.means[m]) ? ojson(nullptr) : ojson(s.means[m]);
    }
    stages[s.stage] = ojson{{"n", s.n}, {"means", std::move(means)}};
  }
  ojson pairs = ojson::array();
  for (const PairTest& p : report.pairs) {
    ojson j{{"a", p.a}, {"b", p.b}, {"measure", p.measure}};
    if (p.result) {
      j["t"] = p.result->t_statistic;
      j["p"] = p.result->p_value;
      j["df"] = p.result->df;
      j["reject"] = p.result->reject_at_005;
    } else {
      j["t"] = nullptr;
      j["p"] = nullptr;
      j["df"] = nullptr;
      j["reject"] = nullptr;
      j["error"] = p.error;
    }
    pairs.push_back(std::move(j));
  }
  ojson out{{"stages", std::move(stages)}, {"pairs", std::move(pairs)}};
  return out.dump(2) + "\n";
}

std::string render_comparison_table(const ComparisonReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %6s %12s %12s %12s %8s\n", "stage", "n", "naturalness", "educational",
                "sensitivity", "total");
  out += buf;
  for (const StageSummary& s : report.stages) {
    std::snprintf(buf, sizeof buf, "%-16s %6zu %12.2f %12.2f %12.2f %8.2f\n", s.stage.c_str(), s.n, s.means[0],
                  s.means[1], s.means[2], s.means[3]);
    out += buf;
  }
  out += "\n";
  for (const PairTest& p : report.pairs) {
    std::snprintf(buf, sizeof buf, "%-16s vs %-16s %-12s ", p.a.c_str(), p.b.c_str(), p.measure.c_str());
    out += buf;
    if (p.result) {
      out += format_t_result(*p.result);
      out += p.result->reject_at_005 ? "  reject H0" : "";
    } else {
      out += "untested (" + p.error.substr(0, p.error.find(':')) + ")";
    }
    out += "\n";
  }
  return out;
}

void write_prompts_jsonl(std::span<const Document> docs, const RubricTemplate& tmpl, std::ostream& out) {
  for (const Document& d : docs) {
    if (d.text.empty()) continue;
    nlohmann::ordered_json j{{"doc_id", d.id}, {"prompt", render_rubric_prompt(d, tmpl)}};
    out << j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
  }
  out.flush();
  if (!out) throw SinkWriteFailure("failed writing prompts");
}

std::vector<ResponseRecord> read_responses_jsonl(std::istream& in) {
  std::vector<ResponseRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw MalformedLine(line_no, "not a JSON object");
    if (!j.contains("doc_id") || !j["doc_id"].is_string() || !j.contains("response") ||
        !j["response"].is_string()) {
      throw MalformedLine(line_no, "expected string fields doc_id and response");
    }
    out.push_back({j["doc_id"].get<std::string>(), j["response"].get<std::string>()});
  }
  return out;
}

ScoredResponses score_responses(std::span<const ResponseRecord> responses) {
  ScoredResponses out;
  for (const ResponseRecord& r : responses) {
    try {
      ParsedScores p = parse_scores_detailed(r.response, r.doc_id);
      if (p.total_disagrees) {
        ++out.total_disagreements;
        log::info("response for " + r.doc_id + " states total " + std::to_string(*p.stated_total) +
                  ", recomputed " + std::to_string(p.card.total));
      }
      out.cards.push_back(std::move(p.card));
    } catch (const UnparsableResponse& e) {
      ++out.unparsable;
      log::info(e.what());
    }
  }
  return out;
}

}  // namespace twc
