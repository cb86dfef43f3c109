#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "twc/pipeline.hpp"

namespace twc {

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

// Every key accepted by config files, flags and apply_config_entry().
const std::vector<ConfigKey>& config_keys();

// Sets one field from its textual form. Relative paths are resolved against
// `base_dir`. Throws ConfigInvalid for unknown keys or unparsable values.
void apply_config_entry(PipelineConfig& config, std::string_view key, std::string_view value,
                        const std::filesystem::path& base_dir = {});

// Flat "key = value" text, '#' comments. Paths inside resolve relative to
// the file's directory.
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);
void apply_config_text(PipelineConfig& config, std::string_view text, const std::filesystem::path& base_dir);

// TWC_WORKER_COUNT and TWC_OUTPUT_DIR.
void apply_env_overrides(PipelineConfig& config);

// The effective configuration in config-file syntax.
std::string render_config(const PipelineConfig& config);

}  // namespace twc
