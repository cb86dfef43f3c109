#include "twc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "twc/data_files.hpp"
#include "twc/error.hpp"
#include "twc/utf8.hpp"

namespace twc {

std::vector<std::string> parse_entry_list(std::string_view contents) {
  std::vector<std::string> out;
  for (std::string_view raw : utf8::split_lines(contents)) {
    std::string_view line = utf8::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '\\' && line.size() > 1) line.remove_prefix(1);
    out.emplace_back(line);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> load_entry_list(const std::filesystem::path& path) {
  return parse_entry_list(read_file(path));
}

namespace {

using Setter = std::function<void(PipelineConfig&, std::string_view, const std::filesystem::path&)>;

struct KeyDef {
  ConfigKey key;
  Setter set;
  std::function<std::string(const PipelineConfig&)> get;
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigInvalid("invalid value for " + std::string(key) + ": \"" + std::string(value) + "\"");
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v);
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(out)) bad_value(key, v);
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  const std::string s = utf8::ascii_lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, v);
}

std::filesystem::path to_path(std::string_view v, const std::filesystem::path& base) {
  if (v.empty()) return {};
  std::filesystem::path p{std::string(v)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
KeyDef uint_key(std::string_view name, std::string_view help, T PipelineConfig::*member) {
  return {{name, help},
          [name, member](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
            c.*member = static_cast<T>(to_uint(name, v));
          },
          [member](const PipelineConfig& c) { return std::to_string(c.*member); }};
}

KeyDef path_key(std::string_view name, std::string_view help, std::filesystem::path PipelineConfig::*member) {
  return {{name, help},
          [member](PipelineConfig& c, std::string_view v, const std::filesystem::path& base) {
            c.*member = to_path(v, base);
          },
          [member](const PipelineConfig& c) { return (c.*member).string(); }};
}

template <typename T>
KeyDef quality_uint(std::string_view name, std::string_view help, T QualityConfig::*member) {
  return {{name, help},
          [name, member](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
            c.quality.*member = static_cast<T>(to_uint(name, v));
          },
          [member](const PipelineConfig& c) { return std::to_string(c.quality.*member); }};
}

KeyDef quality_ratio(std::string_view name, std::string_view help, double QualityConfig::*member) {
  return {{name, help},
          [name, member](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
            c.quality.*member = to_double(name, v);
          },
          [member](const PipelineConfig& c) { return fmt_double(c.quality.*member); }};
}

KeyDef quality_list(std::string_view name, std::string_view help,
                    std::vector<std::string> QualityConfig::*member) {
  return {{name, help},
          [member](PipelineConfig& c, std::string_view v, const std::filesystem::path& base) {
            c.quality.*member = load_entry_list(to_path(v, base));
          },
          nullptr};
}

template <typename T>
KeyDef minhash_uint(std::string_view name, std::string_view help, T MinhashParams::*member) {
  return {{name, help},
          [name, member](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
            c.minhash.*member = static_cast<T>(to_uint(name, v));
          },
          [member](const PipelineConfig& c) { return std::to_string(c.minhash.*member); }};
}

const std::vector<KeyDef>& key_defs() {
  static const std::vector<KeyDef> defs = {
      {{"input_paths", "comma-separated WARC archives (.warc.gz or .warc)"},
       [](PipelineConfig& c, std::string_view v, const std::filesystem::path& base) {
         c.input_paths.clear();
         std::size_t start = 0;
         while (start <= v.size()) {
           const std::size_t comma = v.find(',', start);
           const std::string_view part =
               utf8::trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
           if (!part.empty()) c.input_paths.push_back(to_path(part, base));
           if (comma == std::string_view::npos) break;
           start = comma + 1;
         }
       },
       [](const PipelineConfig& c) {
         std::string out;
         for (const auto& p : c.input_paths) {
           if (!out.empty()) out += ",";
           out += p.string();
         }
         return out;
       }},
      path_key("output_dir", "directory receiving shards and stats", &PipelineConfig::output_dir),
      path_key("blocklist_path", "URL blocklist file (empty: block nothing)", &PipelineConfig::blocklist_path),
      path_key("profile_simplified_path", "Simplified-exclusive characters file",
               &PipelineConfig::profile_simplified_path),
      path_key("profile_traditional_path", "Traditional-exclusive characters file",
               &PipelineConfig::profile_traditional_path),
      path_key("profile_phrases_path", "blocked phrases file", &PipelineConfig::profile_phrases_path),
      path_key("scorer_model_path", "n-gram language model (empty: built-in script scorer)",
               &PipelineConfig::scorer_model_path),
      quality_uint("min_words", "Gopher: fewer words removes", &QualityConfig::min_words),
      quality_uint("max_words", "Gopher: more words removes", &QualityConfig::max_words),
      quality_ratio("max_symbol_word_ratio", "Gopher: symbol/word ratio above removes",
                    &QualityConfig::max_symbol_word_ratio),
      quality_ratio("max_ellipsis_line_ratio", "Gopher: ellipsis-line share above removes",
                    &QualityConfig::max_ellipsis_line_ratio),
      quality_list("stop_words_path", "Gopher: stop word list file", &QualityConfig::stop_words),
      quality_list("symbols_path", "Gopher: symbol list file", &QualityConfig::symbols),
      quality_ratio("max_bracket_ratio", "C4: bracket ratio above removes", &QualityConfig::max_bracket_ratio),
      quality_list("policy_substrings_path", "C4: policy substring list file", &QualityConfig::policy_substrings),
      quality_ratio("min_line_punct_ratio", "FineWeb: punctuated-line share below removes",
                    &QualityConfig::min_line_punct_ratio),
      quality_uint("short_line_char_threshold", "FineWeb: lines with fewer codepoints are short",
                   &QualityConfig::short_line_char_threshold),
      quality_ratio("max_short_line_ratio", "FineWeb: short-line share above removes",
                    &QualityConfig::max_short_line_ratio),
      quality_ratio("max_char_dup_ratio", "FineWeb: duplicated-line character share above removes",
                    &QualityConfig::max_char_dup_ratio),
      quality_ratio("max_new_line_ratio", "FineWeb: newline ratio above removes", &QualityConfig::max_new_line_ratio),
      {{"new_line_denominator", "FineWeb: newline ratio denominator, words or codepoints"},
       [](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
         if (v == "words") c.quality.new_line_denominator = NewLineDenominator::kWords;
         else if (v == "codepoints") c.quality.new_line_denominator = NewLineDenominator::kCodepoints;
         else bad_value("new_line_denominator", v);
       },
       [](const PipelineConfig& c) {
         return std::string(c.quality.new_line_denominator == NewLineDenominator::kWords ? "words" : "codepoints");
       }},
      {{"terminal_punctuation", "FineWeb: characters that end a punctuated line"},
       [](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
         if (v.empty()) bad_value("terminal_punctuation", v);
         c.quality.terminal_punctuation = utf8::decode(v);
       },
       [](const PipelineConfig& c) { return utf8::encode(c.quality.terminal_punctuation); }},
      minhash_uint("shingle_size", "minhash: codepoints per shingle", &MinhashParams::shingle_size),
      minhash_uint("num_permutations", "minhash: signature length", &MinhashParams::num_permutations),
      minhash_uint("num_bands", "minhash: LSH bands", &MinhashParams::num_bands),
      minhash_uint("rows_per_band", "minhash: rows per band", &MinhashParams::rows_per_band),
      uint_key("line_trim_threshold", "leading/trailing lines seen more often are trimmed",
               &PipelineConfig::line_trim_threshold),
      {{"language_threshold", "minimum language confidence"},
       [](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
         c.language_threshold = to_double("language_threshold", v);
       },
       [](const PipelineConfig& c) { return fmt_double(c.language_threshold); }},
      {{"max_simplified_fraction", "Simplified share among script-specific characters above removes"},
       [](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
         c.max_simplified_fraction = to_double("max_simplified_fraction", v);
       },
       [](const PipelineConfig& c) { return fmt_double(c.max_simplified_fraction); }},
      uint_key("min_cjk_run", "prefilter: required run of adjacent CJK/kana characters",
               &PipelineConfig::min_cjk_run),
      uint_key("worker_count", "worker threads", &PipelineConfig::worker_count),
      uint_key("seed", "minhash hash seed and sampling seed", &PipelineConfig::seed),
      uint_key("shard_count", "number of output shards", &PipelineConfig::shard_count),
      {{"persist_stages", "write every stage's surviving documents under <output_dir>/stages"},
       [](PipelineConfig& c, std::string_view v, const std::filesystem::path&) {
         c.persist_stages = to_bool("persist_stages", v);
       },
       [](const PipelineConfig& c) { return std::string(c.persist_stages ? "true" : "false"); }},
  };
  return defs;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const KeyDef& d : key_defs()) out.push_back(d.key);
    return out;
  }();
  return keys;
}

void apply_config_entry(PipelineConfig& config, std::string_view key, std::string_view value,
                        const std::filesystem::path& base_dir) {
  for (const KeyDef& d : key_defs()) {
    if (d.key.name == key) {
      d.set(config, utf8::trim(value), base_dir);
      return;
    }
  }
  throw ConfigInvalid("unknown config key: " + std::string(key));
}

void apply_config_text(PipelineConfig& config, std::string_view text, const std::filesystem::path& base_dir) {
  std::size_t line_no = 0;
  for (std::string_view raw : utf8::split_lines(text)) {
    ++line_no;
    const std::string_view line = utf8::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigInvalid("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_config_entry(config, utf8::trim(line.substr(0, eq)), utf8::trim(line.substr(eq + 1)), base_dir);
  }
}

void apply_config_file(PipelineConfig& config, const std::filesystem::path& path) {
  apply_config_text(config, read_file(path), path.parent_path());
}

void apply_env_overrides(PipelineConfig& config) {
  if (const char* v = std::getenv("TWC_WORKER_COUNT"); v && *v) apply_config_entry(config, "worker_count", v);
  if (const char* v = std::getenv("TWC_OUTPUT_DIR"); v && *v) apply_config_entry(config, "output_dir", v);
}

std::string render_config(const PipelineConfig& config) {
  std::string out;
  for (const KeyDef& d : key_defs()) {
    out += "# ";
    out += d.key.help;
    out += "\n";
    if (d.get) {
      out += std::string(d.key.name) + " = " + d.get(config) + "\n";
    } else {
      out += "# " + std::string(d.key.name) + " = <built-in list>\n";
    }
  }
  return out;
}

}  // namespace twc
