#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twc/dedup.hpp"
#include "twc/document.hpp"
#include "twc/quality.hpp"

namespace twc {

enum class Stage { kPrefilter, kExtraction, kLangId, kGopher, kC4, kFineWeb, kMinhash, kLineTrim };

inline constexpr std::array kAllStages = {Stage::kPrefilter, Stage::kExtraction, Stage::kLangId,
                                          Stage::kGopher,    Stage::kC4,         Stage::kFineWeb,
                                          Stage::kMinhash,   Stage::kLineTrim};

// "prefilter", "extraction", "langid", "gopher", "c4", "fineweb", "minhash",
// "line_trim".
std::string_view stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view name);

// Which count a stage's rates are read from. The first three stages are
// reported in documents, the rest in UTF-8 bytes of document text.
enum class StageMetric { kDocuments, kBytes };
StageMetric governing_metric(Stage s);

struct StageStats {
  std::string stage_name;
  StageMetric metric = StageMetric::kDocuments;
  std::uint64_t docs_in = 0;
  std::uint64_t docs_out = 0;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  std::map<std::string, std::uint64_t> removal_reasons;

  static StageStats for_stage(Stage s);
  void add_removal(Reason r) { ++removal_reasons[std::string(reason_name(r))]; }
  std::uint64_t removed_total() const;
  bool operator==(const StageStats&) const = default;
};

struct RemovalRate {
  double rate = 0.0;
  bool zero_input = false;
};

// 1 - out/in in the stage's governing metric (or the metric given).
// Zero input yields rate 0 with zero_input set.
RemovalRate relative_removal_rate(const StageStats& stats);
RemovalRate relative_removal_rate(const StageStats& stats, StageMetric metric);

struct GlobalKeptRate {
  double doc_kept_rate = 1.0;   // product of docs_out/docs_in over all stages
  double byte_kept_rate = 1.0;  // product of bytes_out/bytes_in over byte-metric stages
};

// When consecutive stages chain (each in equals the previous out) the
// product telescopes and is computed as final/initial exactly. Stages with
// zero input contribute a factor of 1.
GlobalKeptRate global_kept_rate(std::span<const StageStats> stats);

struct InputStats {
  std::uint64_t archives = 0;
  std::uint64_t failed_archives = 0;
  std::uint64_t corrupt_records = 0;
  std::uint64_t skipped_records = 0;
  bool operator==(const InputStats&) const = default;
};

struct PipelineConfig {
  std::vector<std::filesystem::path> input_paths;
  std::filesystem::path output_dir;
  std::filesystem::path blocklist_path;  // empty: nothing blocked
  // Script profile files; all three or none (built-in lists).
  std::filesystem::path profile_simplified_path;
  std::filesystem::path profile_traditional_path;
  std::filesystem::path profile_phrases_path;
  std::filesystem::path scorer_model_path;  // empty: built-in script scorer
  QualityConfig quality;
  MinhashParams minhash;
  std::uint64_t line_trim_threshold = 100;
  double language_threshold = 0.65;
  double max_simplified_fraction = 0.0;
  std::size_t min_cjk_run = 5;
  std::size_t worker_count = 1;
  std::uint64_t seed = 1;  // minhash hash seed and default sampling seed
  std::size_t shard_count = 4;
  bool persist_stages = false;

  // Checks values and that every referenced path exists. Throws
  // ConfigInvalid (ScorerUnavailable for the model path). Touches nothing
  // on disk.
  void validate() const;
};

struct PipelineResult {
  InputStats input;
  std::vector<StageStats> stages;  // always all eight, in order
  std::vector<std::filesystem::path> shards;
};

// Runs all eight stages over config.input_paths and writes
//   <output_dir>/part-NNNNN.jsonl   surviving documents, sharded by id hash
//   <output_dir>/stats.json         machine-readable report
//   <output_dir>/stats.txt          the same as an aligned table
// Output is byte-identical for any worker_count.
PipelineResult run_pipeline(const PipelineConfig& config);

// Runs one stage over a file. The prefilter stage reads WARC and writes
// documents whose text is the decoded payload; every other stage reads and
// writes JSONL. The minhash and line_trim stages read their input twice.
StageStats run_stage(Stage stage, const PipelineConfig& config, const std::filesystem::path& in,
                     const std::filesystem::path& out);

}  // namespace twc
