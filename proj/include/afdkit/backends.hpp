#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "afdkit/classify.hpp"
#include "afdkit/prompt.hpp"

namespace afdkit {

// Remote inference endpoint speaking this artifact's wire protocol:
//   POST {endpoint}/v1/classify
//   request  {"task": "...", "labels": [...], "text": "..."}
//   response {"labels": [{"label": "...", "score": 0.87}, ...]}  (ranked)
class RemoteBackend : public PredictionBackend {
 public:
  struct Config {
    std::string endpoint;  // origin, e.g. "http://127.0.0.1:8111"
    double timeout_s = 15.0;
  };

  explicit RemoteBackend(Config cfg);

  Prediction predict(AnalysisTask task, const LabelSpace& space, std::string_view text,
                     std::string_view title = {}) override;
  std::string name() const override { return "remote"; }
  bool local() const override { return false; }

 private:
  Config cfg_;
};

// Chat-completions LLM backend for outcome prediction and explanations.
// Decoding is pinned (temperature 0, max_tokens 512) for reproducibility.
class LlmBackend : public PredictionBackend {
 public:
  struct Config {
    std::string endpoint;  // origin of an OpenAI-compatible API
    std::string model = "gpt-4o";
    std::string api_key;
    double temperature = 0.0;
    int max_tokens = 512;
    double timeout_s = 60.0;
    std::vector<PromptExemplar> shots;  // few-shot exemplars, caller-supplied
  };

  explicit LlmBackend(Config cfg);

  Prediction predict(AnalysisTask task, const LabelSpace& space, std::string_view text,
                     std::string_view title = {}) override;
  std::string name() const override { return "llm"; }
  bool local() const override { return false; }

  // Three-sentence justification for an already-decided label. The classifier
  // label always wins; this only supplies the explanation text.
  std::string explain(std::string_view title, std::string_view discussion,
                      std::string_view label);

  // Raw completion round trip, exposed for the predict/explain paths.
  std::string complete(const std::string& prompt);

 private:
  Config cfg_;
};

// Offline fallback for sentiment and offensive-language tagging. This is a
// small word-list heuristic, not a trained model; name() flags it as such.
class LexiconBackend : public PredictionBackend {
 public:
  LexiconBackend();  // compiled-in word lists

  Prediction predict(AnalysisTask task, const LabelSpace& space, std::string_view text,
                     std::string_view title = {}) override;
  std::string name() const override { return "lexicon-heuristic"; }
  bool local() const override { return true; }

 private:
  std::vector<std::string> positive_;
  std::vector<std::string> negative_;
  std::vector<std::string> offensive_;
};

}  // namespace afdkit
