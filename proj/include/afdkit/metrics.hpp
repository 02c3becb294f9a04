#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afdkit/classify.hpp"

namespace afdkit {

struct PerLabelMetrics {
  std::string label;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  size_t support = 0;  // gold count
  // Zero-division convention: the metric is 0 and the flag is set.
  bool precision_zero_div = false;
  bool recall_zero_div = false;
  bool f1_zero_div = false;
};

struct EvalReport {
  std::vector<std::string> labels;
  double accuracy = 0;
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  std::vector<PerLabelMetrics> per_label;
  // confusion[gold][predicted]
  std::vector<std::vector<size_t>> confusion;
  size_t total = 0;

  std::string render_table() const;
  std::string confusion_csv() const;
  std::string to_json_string() const;
};

// One-vs-rest precision/recall/F1 per label, unweighted macro averages over
// the whole label space (zero-support labels contribute 0), accuracy and the
// gold x predicted confusion matrix. Throws UnknownLabelInPairs when a pair
// carries a label outside the space, EmptyInput on no pairs.
EvalReport evaluate(const std::vector<std::pair<std::string, std::string>>& gold_predicted,
                    const std::vector<std::string>& label_space);

// Pearson correlation; absent when either column has zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

enum class AggregationMode {
  MeanProbability,  // mean per-class probability over a discussion's sentences
  VoteFraction,     // fraction of sentences whose argmax is the class
};

// Per-discussion input to the correlation analysis: the gold outcome plus the
// per-sentence auxiliary predictions (sentiment or stance).
struct ScoredDiscussion {
  std::string outcome_label;
  std::vector<Prediction> sentence_predictions;
};

struct CorrelationReport {
  std::vector<std::string> aux_classes;
  std::vector<std::string> outcome_labels;
  // r[aux][outcome]; absent when a cell has zero variance
  std::vector<std::vector<std::optional<double>>> r;
  size_t sample_size = 0;
  AggregationMode mode = AggregationMode::MeanProbability;

  std::string render_table() const;
  std::string to_csv() const;
};

// Pearson r between per-discussion mean auxiliary scores and one-hot outcome
// indicators. Requires at least 3 discussions, each with at least one scored
// sentence.
CorrelationReport correlate(const std::vector<ScoredDiscussion>& discussions,
                            const LabelSpace& aux_space,
                            const std::vector<std::string>& outcome_labels,
                            AggregationMode mode = AggregationMode::MeanProbability);

}  // namespace afdkit
