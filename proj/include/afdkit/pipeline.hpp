#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "afdkit/backends.hpp"
#include "afdkit/classify.hpp"
#include "afdkit/collector.hpp"
#include "afdkit/parser.hpp"
#include "afdkit/types.hpp"

namespace afdkit {

enum class InputMode { Url, Text };

struct AnalyzeRequest {
  std::string input;  // URL or raw discussion text
  InputMode mode = InputMode::Text;
  AnalysisTask task = AnalysisTask::Outcome;
  bool want_explanation = false;

  void validate() const;
};

struct SentenceResult {
  Sentence sentence;
  Prediction prediction;
};

struct AnalysisResult {
  AnalysisTask task = AnalysisTask::Outcome;
  std::optional<std::string> title;         // resolved in url mode
  std::optional<Prediction> outcome;        // discussion-level tasks
  std::vector<SentenceResult> sentences;    // sentence-level tasks, by index

  // Line-delimited records mirroring the per-task key conventions
  // (prediction/probability/explanation; sentence/label|sentiment|policy|
  // offensive_label/score).
  std::vector<std::string> to_records() const;
};

struct PipelineOptions {
  CollectorConfig collector;
  const LabelTable* table = nullptr;  // builtin when null
};

// The one-click orchestration: input resolution -> parsing -> task-specific
// preprocessing -> prediction -> optional LLM explanation.
class Pipeline {
 public:
  explicit Pipeline(PipelineOptions opts = {});

  // url mode fetches the page and selects the discussion by fragment anchor
  // (or the only one on the page); text mode treats the input as cleaned
  // discussion text. Sentence-level tasks segment first and predict per
  // sentence. want_explanation requires an LLM backend.
  AnalysisResult analyze(const AnalyzeRequest& req, PredictionBackend& backend,
                         const LabelSpace& space, LlmBackend* llm = nullptr);

  // Resolves a discussion URL to the cleaned discussion (shared by analyze
  // and the CLI).
  Discussion resolve_url(const std::string& url);

 private:
  PipelineOptions opts_;
  std::unique_ptr<Fetcher> fetcher_;
};

struct BatchItem {
  std::string gold;
  std::optional<Prediction> prediction;
  std::optional<std::string> error;
};

// One prediction per discussion, order-preserving; per-item failures are
// recorded rather than aborting the batch.
std::vector<BatchItem> batch_analyze(const std::vector<Discussion>& items, AnalysisTask task,
                                     PredictionBackend& backend, const LabelSpace& space);

}  // namespace afdkit
