#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "afdkit/classify.hpp"

namespace afdkit {

// Multinomial logistic regression internals, exposed so the training gradient
// can be checked against finite differences.
namespace logreg {

using SparseVec = std::vector<std::pair<int, double>>;  // (feature index, value)
using Matrix = std::vector<std::vector<double>>;        // n_labels x (dim + 1), bias last

struct Problem {
  std::vector<SparseVec> x;
  std::vector<int> y;  // label indices
  int dim = 0;
  int n_labels = 0;
  double l2 = 0;  // applied to weights, not the bias column
};

// Mean cross-entropy plus L2 penalty.
double loss(const Problem& p, const Matrix& w);

// Analytic gradient of loss().
Matrix gradient(const Problem& p, const Matrix& w);

// Full-batch gradient descent from zero initialization; deterministic.
// When loss_history is non-null it receives the loss before each step.
Matrix train(const Problem& p, double learning_rate, int epochs,
             std::vector<double>* loss_history = nullptr);

}  // namespace logreg

struct BaselineHyperparams {
  double l2 = 1e-4;
  int epochs = 200;
  double learning_rate = 0.5;
  int min_term_freq = 1;  // minimum document frequency for vocabulary terms
  uint64_t seed = 13;
};

struct TrainExample {
  std::string text;
  std::string label;
};

// TF-IDF (unigram + bigram) features into multinomial logistic regression.
// The vocabulary is built from the training split only.
class BaselineModel : public PredictionBackend {
 public:
  Prediction predict(AnalysisTask task, const LabelSpace& space, std::string_view text,
                     std::string_view title = {}) override;
  std::string name() const override { return "baseline"; }
  bool local() const override { return true; }

  AnalysisTask task() const { return space_.task; }
  const LabelSpace& space() const { return space_; }
  double validation_macro_f1() const { return validation_macro_f1_; }

  size_t vocabulary_size() const { return vocab_.size(); }

  // Versioned text format with a magic header line.
  void save(const std::filesystem::path& file) const;
  static BaselineModel load(const std::filesystem::path& file);

  friend BaselineModel train_baseline(const std::vector<TrainExample>&,
                                      const std::vector<TrainExample>&, const LabelSpace&,
                                      const BaselineHyperparams&);

  logreg::SparseVec featurize(std::string_view text) const;

 private:
  LabelSpace space_;
  std::unordered_map<std::string, int> vocab_;  // term -> index
  std::vector<double> idf_;                     // by index
  logreg::Matrix weights_;                      // |labels| x (|vocab|+1)
  BaselineHyperparams hp_;
  double validation_macro_f1_ = 0;
};

// Trains on the given split; validation is used only for the reported
// macro-F1. Throws InsufficientData when a label of the space has fewer than
// two training items.
BaselineModel train_baseline(const std::vector<TrainExample>& train,
                             const std::vector<TrainExample>& validation, const LabelSpace& space,
                             const BaselineHyperparams& hp = {});

// Lowercased alphanumeric tokens, as used for baseline features.
std::vector<std::string> feature_tokens(std::string_view text);

}  // namespace afdkit
