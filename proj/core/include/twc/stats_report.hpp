#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twc/pipeline.hpp"

namespace twc {

inline constexpr int kStatsSchemaVersion = 1;

struct StatsReport {
  int schema_version = kStatsSchemaVersion;
  InputStats input;
  std::vector<StageStats> stages;
  GlobalKeptRate global;

  bool operator==(const StatsReport&) const = default;
};

StatsReport make_stats_report(const InputStats& input, std::vector<StageStats> stages);

// {schema_version, input, stages: [...], global: {doc_kept_rate,
// byte_kept_rate}}. Two-space indentation, keys in fixed order, trailing
// newline; byte-identical for equal reports.
std::string stats_to_json(const StatsReport& report);

// Throws Error when the text is not a report of a known schema version.
StatsReport stats_from_json(std::string_view json);

// Aligned columns: stage, metric, docs in/out, bytes in/out, removal rate.
std::string render_stats_table(const StatsReport& report);

// Per-stage removal rate against the previous stage and the running kept
// rate in each stage's governing metric, plus removal reasons.
std::string render_stage_summary(const StatsReport& report);

}  // namespace twc
