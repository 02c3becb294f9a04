#include "afdkit/classify.hpp"

#include <cmath>
#include <set>

#include "afdkit/util.hpp"

namespace afdkit {

std::string_view to_string(AnalysisTask t) {
  switch (t) {
    case AnalysisTask::Outcome: return "outcome";
    case AnalysisTask::Stance: return "stance";
    case AnalysisTask::Policy: return "policy";
    case AnalysisTask::Sentiment: return "sentiment";
    case AnalysisTask::Offensive: return "offensive";
  }
  return "";
}

std::optional<AnalysisTask> task_from_string(std::string_view s) {
  if (s == "outcome") return AnalysisTask::Outcome;
  if (s == "stance") return AnalysisTask::Stance;
  if (s == "policy") return AnalysisTask::Policy;
  if (s == "sentiment") return AnalysisTask::Sentiment;
  if (s == "offensive") return AnalysisTask::Offensive;
  return std::nullopt;
}

bool is_discussion_level(AnalysisTask t) { return t == AnalysisTask::Outcome; }

LabelSpace LabelSpace::for_task(AnalysisTask t, const std::vector<std::string>& policy_labels) {
  LabelSpace space;
  space.task = t;
  switch (t) {
    case AnalysisTask::Outcome:
      space.labels = outcome_label_names();
      break;
    case AnalysisTask::Stance:
      space.labels = {"keep", "delete", "merge", "comment"};
      break;
    case AnalysisTask::Policy:
      if (policy_labels.empty())
        throw PreconditionViolation("policy task requires the configured policy label list");
      space.labels = policy_labels;
      break;
    case AnalysisTask::Sentiment:
      space.labels = {"positive", "negative", "neutral"};
      break;
    case AnalysisTask::Offensive:
      space.labels = {"offensive", "non-offensive"};
      break;
  }
  std::set<std::string> unique(space.labels.begin(), space.labels.end());
  if (unique.size() != space.labels.size())
    throw PreconditionViolation("label space contains duplicates");
  return space;
}

int LabelSpace::index_of(std::string_view label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return int(i);
  return -1;
}

Prediction predict(PredictionBackend& backend, AnalysisTask task, const LabelSpace& space,
                   std::string_view text, std::string_view title) {
  if (trim(text).empty()) throw PreconditionViolation("prediction input text must be non-empty");
  if (space.task != task) throw PreconditionViolation("label space does not match the task");

  Prediction p = backend.predict(task, space, text, title);

  if (!space.contains(p.label))
    throw LabelSpaceMismatch("backend \"" + backend.name() + "\" returned label \"" + p.label +
                             "\" outside the " + std::string(to_string(task)) + " label space");
  if (p.per_label_scores) {
    const auto& scores = *p.per_label_scores;
    if (scores.size() != space.labels.size())
      throw LabelSpaceMismatch("backend returned a score vector of the wrong size");
    double sum = 0;
    size_t argmax = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
      sum += scores[i];
      if (scores[i] > scores[argmax]) argmax = i;
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw LabelSpaceMismatch("backend score distribution does not sum to 1");
    if (space.labels[argmax] != p.label)
      throw LabelSpaceMismatch("backend label disagrees with its own score argmax");
  }
  return p;
}

}  // namespace afdkit
