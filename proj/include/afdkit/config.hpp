#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "afdkit/collector.hpp"
#include "afdkit/dataset.hpp"

namespace afdkit {

// Tool configuration. Precedence: command-line flags beat environment
// variables beat the config file beat these defaults.
struct Config {
  CollectorConfig collector;

  std::optional<std::filesystem::path> variants_file;       // label variant table
  std::optional<std::filesystem::path> policy_labels_file;  // 15 policy names

  SplitRatios ratios;
  uint64_t seed = 13;

  std::string remote_endpoint;                       // remote inference origin
  std::string llm_endpoint;                          // chat-completions origin
  std::string llm_model = "gpt-4o";
  std::string llm_api_key_env = "AFDKIT_LLM_API_KEY";

  // Loads a JSON config file, then applies AFDKIT_* environment overrides.
  // Referenced paths must exist. `file` empty -> defaults + env only.
  static Config load(const std::filesystem::path& file = {});

  // Resolved policy label list (file contents, or the compiled-in default 15).
  std::vector<std::string> policy_labels() const;

  // Label table from variants_file, or the builtin table.
  LabelTable label_table() const;

  std::optional<std::string> llm_api_key() const;  // from the named env var
};

// Compiled-in default policy label space (15 names), mirroring
// data/policy_labels.txt.
const std::vector<std::string>& default_policy_labels();

}  // namespace afdkit
