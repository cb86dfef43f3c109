#include "twc/stats_report.hpp"

#include <cstdio>
#include <json.hpp>

#include "twc/error.hpp"

namespace twc {

namespace {

using ojson = nlohmann::ordered_json;

std::string_view metric_name(StageMetric m) { return m == StageMetric::kDocuments ? "documents" : "bytes"; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

std::uint64_t get_u64(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw Error(std::string("stats report: missing or invalid ") + key);
  }
  return j.at(key).get<std::uint64_t>();
}

}  // namespace

StatsReport make_stats_report(const InputStats& input, std::vector<StageStats> stages) {
  StatsReport r;
  r.input = input;
  r.stages = std::move(stages);
  r.global = global_kept_rate(r.stages);
  return r;
}

std::string stats_to_json(const StatsReport& report) {
  ojson j;
  j["schema_version"] = report.schema_version;
  j["input"] = ojson{{"archives", report.input.archives},
                     {"failed_archives", report.input.failed_archives},
                     {"corrupt_records", report.input.corrupt_records},
                     {"skipped_records", report.input.skipped_records}};
  ojson stages = ojson::array();
  for (const StageStats& s : report.stages) {
    ojson reasons = ojson::object();
    for (const auto& [k, v] : s.removal_reasons) reasons[k] = v;
    const RemovalRate rate = relative_removal_rate(s);
    stages.push_back(ojson{{"stage_name", s.stage_name},
                           {"metric", metric_name(s.metric)},
                           {"docs_in", s.docs_in},
                           {"docs_out", s.docs_out},
                           {"bytes_in", s.bytes_in},
                           {"bytes_out", s.bytes_out},
                           {"removal_reasons", std::move(reasons)},
                           {"removal_rate", rate.rate},
                           {"zero_input", rate.zero_input}});
  }
  j["stages"] = std::move(stages);
  j["global"] = ojson{{"doc_kept_rate", report.global.doc_kept_rate},
                      {"byte_kept_rate", report.global.byte_kept_rate}};
  return j.dump(2) + "\n";
}

StatsReport stats_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error("stats report: not a JSON object");
  if (!j.contains("schema_version") || j.at("schema_version") != kStatsSchemaVersion) {
    throw Error("stats report: unsupported schema_version");
  }
  StatsReport r;
  if (j.contains("input")) {
    const auto& in = j.at("input");
    r.input.archives = get_u64(in, "archives");
    r.input.failed_archives = get_u64(in, "failed_archives");
    r.input.corrupt_records = get_u64(in, "corrupt_records");
    r.input.skipped_records = get_u64(in, "skipped_records");
  }
  if (!j.contains("stages") || !j.at("stages").is_array()) throw Error("stats report: missing stages");
  for (const auto& js : j.at("stages")) {
    StageStats s;
    if (!js.contains("stage_name") || !js.at("stage_name").is_string()) throw Error("stats report: bad stage");
    s.stage_name = js.at("stage_name").get<std::string>();
    if (const auto st = parse_stage(s.stage_name)) {
      s.metric = governing_metric(*st);
    } else {
      s.metric = js.value("metric", std::string("documents")) == "bytes" ? StageMetric::kBytes
                                                                          : StageMetric::kDocuments;
    }
    s.docs_in = get_u64(js, "docs_in");
    s.docs_out = get_u64(js, "docs_out");
    s.bytes_in = get_u64(js, "bytes_in");
    s.bytes_out = get_u64(js, "bytes_out");
    if (js.contains("removal_reasons")) {
      for (const auto& [k, v] : js.at("removal_reasons").items()) {
        if (!v.is_number_unsigned()) throw Error("stats report: bad removal count");
        s.removal_reasons[k] = v.get<std::uint64_t>();
      }
    }
    r.stages.push_back(std::move(s));
  }
  r.global = global_kept_rate(r.stages);
  return r;
}

std::string render_stats_table(const StatsReport& report) {
  const std::vector<std::string> header = {"stage", "metric", "docs_in", "docs_out", "bytes_in", "bytes_out",
                                           "removal_rate"};
  std::vector<std::vector<std::string>> rows;
  for (const StageStats& s : report.stages) {
    const RemovalRate rate = relative_removal_rate(s);
    rows.push_back({s.stage_name, std::string(metric_name(s.metric)), std::to_string(s.docs_in),
                    std::to_string(s.docs_out), std::to_string(s.bytes_in), std::to_string(s.bytes_out),
                    rate.zero_input ? "n/a" : fixed(rate.rate * 100.0, 2) + "%"});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      out += pad(row[c], width[c], c < 2);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  out += "doc_kept_rate  " + fixed(report.global.doc_kept_rate, 6) + "\n";
  out += "byte_kept_rate " + fixed(report.global.byte_kept_rate, 6) + "\n";
  return out;
}

std::string render_stage_summary(const StatsReport& report) {
  std::string out;
  double running = 1.0;
  std::size_t name_w = 5;
  for (const StageStats& s : report.stages) name_w = std::max(name_w, s.stage_name.size());
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    const StageStats& s = report.stages[i];
    const RemovalRate rate = relative_removal_rate(s);
    if (!rate.zero_input) running *= 1.0 - rate.rate;
    out += std::to_string(i + 1) + ". " + pad(s.stage_name, name_w, true) + "  removed " +
           pad(rate.zero_input ? "n/a" : fixed(rate.rate * 100.0, 2) + "%", 7, false) + " of " +
           std::string(metric_name(s.metric)) + "  kept so far " + fixed(running * 100.0, 2) + "%\n";
    for (const auto& [reason, count] : s.removal_reasons) {
      out += "     " + reason + ": " + std::to_string(count) + "\n";
    }
  }
  return out;
}

}  // namespace twc
