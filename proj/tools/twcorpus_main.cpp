// twcorpus: command-line front end for the curation pipeline and the
// evaluation harness.
//
// Exit codes: 0 success, 1 configuration error (nothing written),
// 2 runtime failure (output may be partial).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twc/config.hpp"
#include "twc/data_files.hpp"
#include "twc/error.hpp"
#include "twc/eval.hpp"
#include "twc/jsonl.hpp"
#include "twc/log.hpp"
#include "twc/pipeline.hpp"
#include "twc/stats_report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// Thrown for bad command-line input that is not a config key.
struct UsageError : twc::ConfigInvalid {
  using twc::ConfigInvalid::ConfigInvalid;
};

std::string flag_for(std::string_view key) {
  std::string f = "--";
  for (char c : key) f.push_back(c == '_' ? '-' : c);
  return f;
}

// One string option per config key, applied after the config file and the
// environment so flags always win.
struct ConfigFlags {
  std::string config_file;
  std::vector<std::string> inputs;
  std::string output;
  std::map<std::string, std::string> values;

  void attach(CLI::App& app, bool with_io_aliases) {
    app.add_option("--config,-c", config_file, "key = value config file");
    if (with_io_aliases) {
      app.add_option("--input,-i", inputs, "WARC archive (repeatable)");
      app.add_option("--output,-o", output, "output directory");
    }
    for (const twc::ConfigKey& k : twc::config_keys()) {
      const std::string key(k.name);
      app.add_option_function<std::string>(
          flag_for(k.name), [this, key](const std::string& v) { values[key] = v; }, std::string(k.help));
    }
  }

  twc::PipelineConfig build() const {
    twc::PipelineConfig cfg;
    if (!config_file.empty()) twc::apply_config_file(cfg, config_file);
    twc::apply_env_overrides(cfg);
    for (const auto& [k, v] : values) twc::apply_config_entry(cfg, k, v, fs::current_path());
    if (!inputs.empty()) {
      cfg.input_paths.clear();
      for (const auto& p : inputs) cfg.input_paths.emplace_back(p);
    }
    if (!output.empty()) cfg.output_dir = output;
    return cfg;
  }
};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.flush();
  if (!out) throw twc::SinkWriteFailure("failed writing " + path.string());
}

int cmd_run(const ConfigFlags& flags) {
  const twc::PipelineConfig cfg = flags.build();
  cfg.validate();
  if (cfg.output_dir.empty()) throw UsageError("run needs --output (or output_dir in the config)");
  try {
    const twc::PipelineResult result = twc::run_pipeline(cfg);
    const twc::StatsReport report = twc::make_stats_report(result.input, result.stages);
    std::cout << twc::render_stats_table(report);
  } catch (const twc::ConfigInvalid&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "twcorpus: " << e.what() << "\n"
              << "twcorpus: run failed; " << cfg.output_dir.string() << " may hold partial output\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_stage(const ConfigFlags& flags, const std::string& name, const fs::path& in, const fs::path& out) {
  const auto stage = twc::parse_stage(name);
  if (!stage) throw UsageError("unknown stage: " + name);
  const twc::PipelineConfig cfg = flags.build();
  cfg.validate();
  if (!fs::is_regular_file(in)) throw UsageError("stage input not found: " + in.string());
  try {
    const twc::StageStats s = twc::run_stage(*stage, cfg, in, out);
    std::cout << twc::render_stats_table(twc::make_stats_report({}, {s}));
  } catch (const twc::ConfigInvalid&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "twcorpus: " << e.what() << "\n"
              << "twcorpus: stage failed; " << out.string() << " may be partial\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_stats(const fs::path& report_path, const std::string& format) {
  const twc::StatsReport report = twc::stats_from_json(twc::read_file(report_path));
  if (format == "table" || format == "both") std::cout << twc::render_stats_table(report);
  if (format == "both") std::cout << "\n";
  if (format == "summary" || format == "both") std::cout << twc::render_stage_summary(report);
  return kExitOk;
}

int cmd_sample(const fs::path& in, const fs::path& out, std::size_t n, std::uint64_t seed) {
  const std::vector<twc::Document> docs = twc::sample_documents(in, n, seed);
  std::ofstream sink(out, std::ios::binary | std::ios::trunc);
  if (!sink) throw twc::SinkWriteFailure("cannot open " + out.string());
  twc::write_documents_jsonl(docs, sink);
  std::cerr << "sampled " << docs.size() << " documents\n";
  return kExitOk;
}

int cmd_prompts(const fs::path& in, const fs::path& out, const std::string& template_path) {
  const twc::RubricTemplate tmpl =
      template_path.empty() ? twc::RubricTemplate::builtin() : twc::RubricTemplate::load(template_path);
  std::ifstream src(in, std::ios::binary);
  if (!src) throw twc::Error("cannot read " + in.string());
  twc::JsonlDocumentReader reader(src);
  std::vector<twc::Document> docs;
  while (auto d = reader.next()) docs.push_back(std::move(*d));
  std::ofstream sink(out, std::ios::binary | std::ios::trunc);
  if (!sink) throw twc::SinkWriteFailure("cannot open " + out.string());
  twc::write_prompts_jsonl(docs, tmpl, sink);
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& specs, const std::string& out, bool pooled) {
  std::vector<twc::StageScores> stages;
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected --stage name=responses.jsonl, got " + spec);
    std::ifstream in(spec.substr(eq + 1), std::ios::binary);
    if (!in) throw twc::Error("cannot read " + spec.substr(eq + 1));
    const auto responses = twc::read_responses_jsonl(in);
    twc::ScoredResponses scored = twc::score_responses(responses);
    std::cerr << spec.substr(0, eq) << ": " << scored.cards.size() << " scored, " << scored.unparsable
              << " unparsable, " << scored.total_disagreements << " stated totals corrected\n";
    stages.push_back({spec.substr(0, eq), std::move(scored.cards)});
  }
  const twc::ComparisonReport report =
      twc::compare_stages(stages, pooled ? twc::TTestVariant::kPooled : twc::TTestVariant::kWelch);
  if (!out.empty()) write_file(out, twc::comparison_to_json(report));
  std::cout << twc::render_comparison_table(report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traditional Chinese web-corpus curation pipeline"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "debug, info, warn, error or off")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));

  ConfigFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run all eight stages over WARC archives");
  run_flags.attach(*run, true);

  ConfigFlags stage_flags;
  std::string stage_name;
  std::string stage_in, stage_out;
  CLI::App* stage = app.add_subcommand("stage", "run one stage over a file (WARC for prefilter, else JSONL)");
  stage->add_option("name", stage_name, "prefilter, extraction, langid, gopher, c4, fineweb, minhash, line_trim")
      ->required();
  stage->add_option("--in", stage_in, "input file")->required();
  stage->add_option("--out", stage_out, "output JSONL")->required();
  stage_flags.attach(*stage, false);

  std::string stats_path, stats_format = "both";
  CLI::App* stats = app.add_subcommand("stats", "render a stats.json report");
  stats->add_option("report", stats_path, "stats.json")->required()->check(CLI::ExistingFile);
  stats->add_option("--format", stats_format, "table, summary or both")
      ->check(CLI::IsMember({"table", "summary", "both"}));

  std::string sample_in, sample_out;
  std::size_t sample_n = 1000;
  std::uint64_t sample_seed = 1;
  CLI::App* sample = app.add_subcommand("sample", "reservoir-sample documents from a JSONL corpus");
  sample->add_option("--in", sample_in, "JSONL corpus")->required()->check(CLI::ExistingFile);
  sample->add_option("--out", sample_out, "sampled JSONL")->required();
  sample->add_option("-n,--count", sample_n, "sample size")->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "sampling seed");

  std::string prompts_in, prompts_out, prompts_template;
  CLI::App* prompts = app.add_subcommand("prompts", "render judging prompts for sampled documents");
  prompts->add_option("--in", prompts_in, "JSONL documents")->required()->check(CLI::ExistingFile);
  prompts->add_option("--out", prompts_out, "prompts.jsonl")->required();
  prompts->add_option("--template", prompts_template, "rubric template file")->check(CLI::ExistingFile);

  std::vector<std::string> compare_specs;
  std::string compare_out;
  bool compare_pooled = false;
  CLI::App* compare = app.add_subcommand("compare", "score judge responses and t-test every pair of stages");
  compare->add_option("--stage", compare_specs, "name=responses.jsonl (repeat for each stage)")->required();
  compare->add_option("--out", compare_out, "report JSON");
  compare->add_flag("--pooled", compare_pooled, "Student's pooled-variance test instead of Welch's");

  CLI::App* config = app.add_subcommand("config", "print the effective configuration");
  ConfigFlags config_flags;
  config_flags.attach(*config, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::map<std::string, twc::log::Level> levels = {{"debug", twc::log::Level::kDebug},
                                                         {"info", twc::log::Level::kInfo},
                                                         {"warn", twc::log::Level::kWarn},
                                                         {"error", twc::log::Level::kError},
                                                         {"off", twc::log::Level::kOff}};
  twc::log::set_level(levels.at(log_level));

  try {
    if (*run) return cmd_run(run_flags);
    if (*stage) return cmd_stage(stage_flags, stage_name, stage_in, stage_out);
    if (*stats) return cmd_stats(stats_path, stats_format);
    if (*sample) return cmd_sample(sample_in, sample_out, sample_n, sample_seed);
    if (*prompts) return cmd_prompts(prompts_in, prompts_out, prompts_template);
    if (*compare) return cmd_compare(compare_specs, compare_out, compare_pooled);
    if (*config) {
      std::cout << twc::render_config(config_flags.build());
      return kExitOk;
    }
  } catch (const twc::ConfigInvalid& e) {
    std::cerr << "twcorpus: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "twcorpus: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
