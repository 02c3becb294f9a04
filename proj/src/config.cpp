#include "afdkit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>

#include "afdkit/util.hpp"

namespace afdkit {

using json = nlohmann::json;

const std::vector<std::string>& default_policy_labels() {
  static const std::vector<std::string> kLabels = {
      "Wikipedia:Notability",
      "Wikipedia:Verifiability",
      "Wikipedia:Reliable sources",
      "Wikipedia:No original research",
      "Wikipedia:Neutral point of view",
      "Wikipedia:What Wikipedia is not",
      "Wikipedia:Biographies of living persons",
      "Wikipedia:Notability (people)",
      "Wikipedia:Notability (music)",
      "Wikipedia:Notability (sports)",
      "Wikipedia:Notability (organizations and companies)",
      "Wikipedia:Notability (films)",
      "Wikipedia:Deletion policy",
      "Wikipedia:Civility",
      "Wikipedia:Conflict of interest",
  };
  return kLabels;
}

namespace {

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

void require_exists(const std::filesystem::path& p, const char* what) {
  if (!std::filesystem::exists(p))
    throw PreconditionViolation(std::string(what) + " does not exist: " + p.string());
}

}  // namespace

Config Config::load(const std::filesystem::path& file) {
  Config cfg;

  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open config file " + file.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error("config file " + file.string() + " is not valid JSON: " + e.what());
    }

    if (j.contains("cache_dir")) cfg.collector.cache_dir = j["cache_dir"].get<std::string>();
    if (j.contains("base_url")) cfg.collector.base_url = j["base_url"].get<std::string>();
    if (j.contains("url_template")) cfg.collector.url_template = j["url_template"].get<std::string>();
    if (j.contains("user_agent")) cfg.collector.user_agent = j["user_agent"].get<std::string>();
    if (j.contains("rate_limit")) cfg.collector.rate_limit = j["rate_limit"].get<double>();
    if (j.contains("parallelism")) cfg.collector.parallelism = j["parallelism"].get<int>();
    if (j.contains("max_retries")) cfg.collector.max_retries = j["max_retries"].get<int>();
    if (j.contains("variants_file")) cfg.variants_file = j["variants_file"].get<std::string>();
    if (j.contains("policy_labels_file"))
      cfg.policy_labels_file = j["policy_labels_file"].get<std::string>();
    if (j.contains("ratios") && j["ratios"].is_array() && j["ratios"].size() == 3) {
      cfg.ratios.train = j["ratios"][0].get<double>();
      cfg.ratios.validation = j["ratios"][1].get<double>();
      cfg.ratios.test = j["ratios"][2].get<double>();
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("backends")) {
      const json& b = j["backends"];
      if (b.contains("remote_endpoint")) cfg.remote_endpoint = b["remote_endpoint"].get<std::string>();
      if (b.contains("llm_endpoint")) cfg.llm_endpoint = b["llm_endpoint"].get<std::string>();
      if (b.contains("llm_model")) cfg.llm_model = b["llm_model"].get<std::string>();
      if (b.contains("llm_api_key_env")) cfg.llm_api_key_env = b["llm_api_key_env"].get<std::string>();
    }
  }

  // environment overrides
  if (auto v = env("AFDKIT_CACHE_DIR")) cfg.collector.cache_dir = *v;
  if (auto v = env("AFDKIT_BASE_URL")) cfg.collector.base_url = *v;
  if (auto v = env("AFDKIT_USER_AGENT")) cfg.collector.user_agent = *v;
  if (auto v = env("AFDKIT_RATE_LIMIT")) cfg.collector.rate_limit = std::stod(*v);
  if (auto v = env("AFDKIT_PARALLELISM")) cfg.collector.parallelism = std::stoi(*v);
  if (auto v = env("AFDKIT_VARIANTS_FILE")) cfg.variants_file = *v;
  if (auto v = env("AFDKIT_POLICY_LABELS_FILE")) cfg.policy_labels_file = *v;
  if (auto v = env("AFDKIT_SEED")) cfg.seed = std::stoull(*v);
  if (auto v = env("AFDKIT_REMOTE_ENDPOINT")) cfg.remote_endpoint = *v;
  if (auto v = env("AFDKIT_LLM_ENDPOINT")) cfg.llm_endpoint = *v;
  if (auto v = env("AFDKIT_LLM_MODEL")) cfg.llm_model = *v;

  if (cfg.variants_file) require_exists(*cfg.variants_file, "label variant table");
  if (cfg.policy_labels_file) require_exists(*cfg.policy_labels_file, "policy label list");
  if (!cfg.ratios.valid())
    throw PreconditionViolation("configured split ratios must be non-negative and sum to 1");

  return cfg;
}

std::vector<std::string> Config::policy_labels() const {
  if (!policy_labels_file) return default_policy_labels();
  std::ifstream in(*policy_labels_file);
  if (!in) throw Error("cannot open policy label list " + policy_labels_file->string());
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    labels.push_back(stripped);
  }
  if (labels.empty()) throw Error("policy label list is empty: " + policy_labels_file->string());
  return labels;
}

LabelTable Config::label_table() const {
  if (variants_file) return LabelTable::load(*variants_file);
  return LabelTable::builtin();
}

std::optional<std::string> Config::llm_api_key() const { return env(llm_api_key_env.c_str()); }

}  // namespace afdkit
