#include "twc/langid.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "twc/builtin_data.hpp"
#include "twc/data_files.hpp"
#include "twc/error.hpp"
#include "twc/utf8.hpp"

namespace twc {
namespace {

bool is_han(char32_t cp) {
  return utf8::is_cjk_ideograph(cp) || (cp >= 0x3400 && cp <= 0x4DBF) || (cp >= 0xF900 && cp <= 0xFAFF) ||
         (cp >= 0x20000 && cp <= 0x3134F);
}
bool is_kana(char32_t cp) { return (cp >= 0x3040 && cp <= 0x30FF) || (cp >= 0x31F0 && cp <= 0x31FF); }
bool is_hangul(char32_t cp) {
  return (cp >= 0xAC00 && cp <= 0xD7AF) || (cp >= 0x1100 && cp <= 0x11FF) || (cp >= 0x3130 && cp <= 0x318F);
}
bool is_latin(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') || (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7);
}
bool is_cyrillic(char32_t cp) { return cp >= 0x400 && cp <= 0x4FF; }

std::unordered_set<char32_t> codepoints_of(const std::vector<std::string>& entries) {
  std::unordered_set<char32_t> out;
  for (const std::string& e : entries) {
    for (char32_t cp : utf8::decode(e)) {
      if (!utf8::is_space(cp)) out.insert(cp);
    }
  }
  return out;
}

}  // namespace

LanguageScore ScriptScorer::score(std::string_view text) {
  std::size_t han = 0, kana = 0, hangul = 0, latin = 0, cyrillic = 0;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    if (is_han(cp)) ++han;
    else if (is_kana(cp)) ++kana;
    else if (is_hangul(cp)) ++hangul;
    else if (is_latin(cp)) ++latin;
    else if (is_cyrillic(cp)) ++cyrillic;
  }
  const std::size_t total = han + kana + hangul + latin + cyrillic;
  if (total == 0) return {"und", 0.0};
  const double denom = static_cast<double>(total);
  std::array<LanguageScore, 4> candidates{};
  if (kana > 0 && 5 * kana >= han + kana) {
    candidates[0] = {"ja", static_cast<double>(han + kana) / denom};
  } else {
    candidates[0] = {"zh", static_cast<double>(han) / denom};
  }
  candidates[1] = {"ko", static_cast<double>(hangul) / denom};
  candidates[2] = {"en", static_cast<double>(latin) / denom};
  candidates[3] = {"ru", static_cast<double>(cyrillic) / denom};
  return *std::max_element(candidates.begin(), candidates.end(),
                           [](const LanguageScore& a, const LanguageScore& b) { return a.confidence < b.confidence; });
}

std::shared_ptr<const NgramModel> NgramModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScorerUnavailable("language model not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::shared_ptr<const NgramModel> NgramModel::parse(std::string_view contents) {
  auto model = std::make_shared<NgramModel>();
  bool header = false;
  std::size_t line_no = 0;
  std::unordered_map<std::string, std::size_t> label_index;
  struct Entry {
    std::size_t label;
    std::string ngram;
    double value;
  };
  std::vector<Entry> entries;
  for (std::string_view line : utf8::split_lines(contents)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != "#twcorpus-ngram-model v1") throw ScorerUnavailable("not an n-gram model file");
      header = true;
      continue;
    }
    if (line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = (t1 == std::string_view::npos) ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      throw ScorerUnavailable("model line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
    }
    const std::string label(line.substr(0, t1));
    const std::string ngram(line.substr(t1 + 1, t2 - t1 - 1));
    const std::string number(line.substr(t2 + 1));
    char* end = nullptr;
    const double value = std::strtod(number.c_str(), &end);
    if (label.empty() || end == number.c_str() || *end != '\0' || !std::isfinite(value)) {
      throw ScorerUnavailable("model line " + std::to_string(line_no) + ": bad entry");
    }
    auto [it, inserted] = label_index.emplace(label, model->labels_.size());
    if (inserted) model->labels_.push_back(label);
    entries.push_back({it->second, ngram, value});
  }
  if (!header || model->labels_.empty()) throw ScorerUnavailable("empty language model");
  const std::size_t k = model->labels_.size();
  model->log_prior_.assign(k, std::log(1.0 / static_cast<double>(k)));
  model->log_unk_.assign(k, std::log(1e-8));
  for (const Entry& e : entries) {
    if (e.ngram == "__prior__") {
      model->log_prior_[e.label] = e.value;
    } else if (e.ngram == "__unk__") {
      model->log_unk_[e.label] = e.value;
    } else {
      auto& row = model->log_prob_[e.ngram];
      if (row.empty()) row.assign(k, std::nan(""));
      row[e.label] = e.value;
    }
  }
  return model;
}

LanguageScore NgramModel::score(std::string_view text) const {
  const std::size_t k = labels_.size();
  std::vector<double> logp = log_prior_;
  const auto add = [&](const std::string& gram) {
    auto it = log_prob_.find(gram);
    for (std::size_t i = 0; i < k; ++i) {
      const double v = (it == log_prob_.end() || std::isnan(it->second[i])) ? log_unk_[i] : it->second[i];
      logp[i] += v;
    }
  };
  std::string prev;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    if (utf8::is_space(cp)) {
      prev.clear();
      continue;
    }
    std::string gram;
    utf8::append(gram, cp);
    add(gram);
    if (!prev.empty()) add(prev + gram);
    prev = std::move(gram);
  }
  const std::size_t best = static_cast<std::size_t>(std::max_element(logp.begin(), logp.end()) - logp.begin());
  double z = 0.0;
  for (double v : logp) z += std::exp(v - logp[best]);
  return {labels_[best], 1.0 / z};
}

ScorerFactory make_scorer_factory(const std::filesystem::path& model_path) {
  if (model_path.empty()) {
    return [] { return std::make_unique<ScriptScorer>(); };
  }
  std::shared_ptr<const NgramModel> model = NgramModel::load(model_path);
  return [model] { return std::make_unique<NgramModelScorer>(model); };
}

ScriptProfile::ScriptProfile(std::unordered_set<char32_t> simplified_exclusive,
                             std::unordered_set<char32_t> traditional_exclusive,
                             std::vector<std::string> blocked_phrases)
    : simplified_(std::move(simplified_exclusive)),
      traditional_(std::move(traditional_exclusive)),
      phrases_(std::move(blocked_phrases)) {
  for (char32_t cp : simplified_) {
    if (traditional_.contains(cp)) {
      std::string c;
      utf8::append(c, cp);
      throw ConfigInvalid("character " + c + " is listed as both Simplified- and Traditional-exclusive");
    }
  }
  for (const std::string& p : phrases_) {
    if (p.empty()) throw ConfigInvalid("blocked phrase list contains an empty entry");
  }
  matcher_ = AhoCorasick(phrases_);
}

const ScriptProfile& ScriptProfile::builtin() {
  static const ScriptProfile profile(codepoints_of(parse_entry_list(builtin_data::kSimplifiedChars)),
                                     codepoints_of(parse_entry_list(builtin_data::kTraditionalChars)),
                                     parse_entry_list(builtin_data::kBlockedPhrases));
  return profile;
}

ScriptProfile ScriptProfile::load(const std::filesystem::path& simplified_chars,
                                  const std::filesystem::path& traditional_chars,
                                  const std::filesystem::path& blocked_phrases) {
  return ScriptProfile(codepoints_of(load_entry_list(simplified_chars)),
                       codepoints_of(load_entry_list(traditional_chars)), load_entry_list(blocked_phrases));
}

bool contains_blocked_phrase(std::string_view text, const ScriptProfile& profile) {
  return profile.phrase_matcher().contains_any(text);
}

double simplified_char_fraction(std::string_view text, const ScriptProfile& profile) {
  std::size_t simplified = 0, traditional = 0;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    if (profile.simplified_exclusive().contains(cp)) ++simplified;
    else if (profile.traditional_exclusive().contains(cp)) ++traditional;
  }
  return static_cast<double>(simplified) / static_cast<double>(std::max<std::size_t>(1, simplified + traditional));
}

std::string format_metric(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.4f", v);
  return buf.data();
}

FilterVerdict identify(Document& doc, LanguageScorer& scorer, const ScriptProfile& profile,
                       const LangIdConfig& config) {
  LanguageScore s{"und", 0.0};
  if (!utf8::trim(doc.text).empty()) s = scorer.score(doc.text);
  s.confidence = std::clamp(s.confidence, 0.0, 1.0);
  doc.meta["lang"] = s.language;
  doc.meta["lang_score"] = format_metric(s.confidence);

  FilterVerdict verdict = FilterVerdict::Keep();
  if (s.language != config.language || s.confidence < config.min_confidence) {
    verdict = FilterVerdict::Remove(Reason::kLowLangConfidence, s.confidence);
  } else if (const double frac = simplified_char_fraction(doc.text, profile); frac > config.max_simplified_fraction) {
    verdict = FilterVerdict::Remove(Reason::kSimplifiedScript, frac);
  } else if (contains_blocked_phrase(doc.text, profile)) {
    verdict = FilterVerdict::Remove(Reason::kBlockedPhrase);
  }
  if (!verdict.keep()) doc.meta["removal_reason"] = std::string(reason_name(verdict.reason()));
  return verdict;
}

}  // namespace twc
