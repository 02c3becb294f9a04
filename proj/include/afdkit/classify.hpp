#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afdkit/errors.hpp"
#include "afdkit/labels.hpp"

namespace afdkit {

enum class AnalysisTask { Outcome, Stance, Policy, Sentiment, Offensive };

std::string_view to_string(AnalysisTask t);
std::optional<AnalysisTask> task_from_string(std::string_view s);

// True for tasks operating on whole discussions (outcome); the rest work on
// sentences/comments.
bool is_discussion_level(AnalysisTask t);

struct LabelSpace {
  AnalysisTask task = AnalysisTask::Outcome;
  std::vector<std::string> labels;

  // Default spaces: outcome = the 8-way taxonomy; stance
  // {keep, delete, merge, comment}; sentiment {positive, negative, neutral};
  // offensive {offensive, non-offensive}; policy requires the configured
  // 15-name list.
  static LabelSpace for_task(AnalysisTask t, const std::vector<std::string>& policy_labels = {});

  int index_of(std::string_view label) const;  // -1 when absent
  bool contains(std::string_view label) const { return index_of(label) >= 0; }
};

struct Prediction {
  std::string label;
  double probability = 0;
  std::optional<std::string> explanation;
  // Aligned with the task's LabelSpace; sums to 1 and argmax == label when
  // present.
  std::optional<std::vector<double>> per_label_scores;
};

// Uniform prediction interface across backend families. `title` is context
// for backends that use it (the LLM outcome prompt); others ignore it.
class PredictionBackend {
 public:
  virtual ~PredictionBackend() = default;

  virtual Prediction predict(AnalysisTask task, const LabelSpace& space, std::string_view text,
                             std::string_view title = {}) = 0;
  virtual std::string name() const = 0;

  // True when predictions stay on this machine (no HTTP).
  virtual bool local() const = 0;
};

// Validating wrapper: rejects empty text, checks the returned label against
// the space, and verifies distribution invariants when scores are present.
Prediction predict(PredictionBackend& backend, AnalysisTask task, const LabelSpace& space,
                   std::string_view text, std::string_view title = {});

}  // namespace afdkit
