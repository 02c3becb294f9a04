#include "afdkit/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "afdkit/metrics.hpp"
#include "afdkit/util.hpp"

namespace afdkit {

using json = nlohmann::json;

namespace logreg {

namespace {

// logits for one example; w rows are [weights..., bias]
std::vector<double> logits(const Matrix& w, const SparseVec& x, int dim) {
  std::vector<double> z(w.size());
  for (size_t label = 0; label < w.size(); ++label) {
    double acc = w[label][size_t(dim)];  // bias
    for (const auto& [idx, value] : x) acc += w[label][size_t(idx)] * value;
    z[label] = acc;
  }
  return z;
}

void softmax_inplace(std::vector<double>& z) {
  double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

}  // namespace

double loss(const Problem& p, const Matrix& w) {
  double total = 0;
  for (size_t i = 0; i < p.x.size(); ++i) {
    std::vector<double> z = logits(w, p.x[i], p.dim);
    double zmax = *std::max_element(z.begin(), z.end());
    double log_sum = 0;
    for (double v : z) log_sum += std::exp(v - zmax);
    log_sum = zmax + std::log(log_sum);
    total += log_sum - z[size_t(p.y[i])];
  }
  total /= double(p.x.size());

  double reg = 0;
  for (const auto& row : w)
    for (int d = 0; d < p.dim; ++d) reg += row[size_t(d)] * row[size_t(d)];
  return total + 0.5 * p.l2 * reg;
}

Matrix gradient(const Problem& p, const Matrix& w) {
  Matrix g(w.size(), std::vector<double>(size_t(p.dim) + 1, 0.0));
  const double inv_n = 1.0 / double(p.x.size());
  for (size_t i = 0; i < p.x.size(); ++i) {
    std::vector<double> prob = logits(w, p.x[i], p.dim);
    softmax_inplace(prob);
    prob[size_t(p.y[i])] -= 1.0;
    for (size_t label = 0; label < w.size(); ++label) {
      double coeff = prob[label] * inv_n;
      if (coeff == 0) continue;
      for (const auto& [idx, value] : p.x[i]) g[label][size_t(idx)] += coeff * value;
      g[label][size_t(p.dim)] += coeff;  // bias
    }
  }
  for (size_t label = 0; label < w.size(); ++label)
    for (int d = 0; d < p.dim; ++d) g[label][size_t(d)] += p.l2 * w[label][size_t(d)];
  return g;
}

Matrix train(const Problem& p, double learning_rate, int epochs,
             std::vector<double>* loss_history) {
  Matrix w(size_t(p.n_labels), std::vector<double>(size_t(p.dim) + 1, 0.0));
  for (int epoch = 0; epoch < epochs; ++epoch) {
    if (loss_history) loss_history->push_back(loss(p, w));
    Matrix g = gradient(p, w);
    for (size_t label = 0; label < w.size(); ++label)
      for (size_t d = 0; d < w[label].size(); ++d) w[label][d] -= learning_rate * g[label][d];
  }
  return w;
}

}  // namespace logreg

std::vector<std::string> feature_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

// unigrams plus space-joined bigrams
std::vector<std::string> terms_of(std::string_view text) {
  std::vector<std::string> tokens = feature_tokens(text);
  std::vector<std::string> terms = tokens;
  for (size_t i = 0; i + 1 < tokens.size(); ++i) terms.push_back(tokens[i] + " " + tokens[i + 1]);
  return terms;
}

}  // namespace

logreg::SparseVec BaselineModel::featurize(std::string_view text) const {
  std::map<int, double> counts;
  for (const auto& term : terms_of(text)) {
    auto it = vocab_.find(term);
    if (it != vocab_.end()) counts[it->second] += 1.0;
  }
  logreg::SparseVec x;
  x.reserve(counts.size());
  double norm = 0;
  for (auto& [idx, tf] : counts) {
    double v = tf * idf_[size_t(idx)];
    x.emplace_back(idx, v);
    norm += v * v;
  }
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (auto& [idx, v] : x) v /= norm;
  }
  return x;
}

Prediction BaselineModel::predict(AnalysisTask task, const LabelSpace& space,
                                  std::string_view text, std::string_view) {
  if (task != space_.task)
    throw PreconditionViolation("baseline model trained for task \"" +
                                std::string(to_string(space_.task)) + "\", asked for \"" +
                                std::string(to_string(task)) + "\"");
  if (space.labels != space_.labels)
    throw LabelSpaceMismatch("label space differs from the one the baseline was trained on");

  logreg::SparseVec x = featurize(text);
  std::vector<double> z(space_.labels.size());
  for (size_t label = 0; label < z.size(); ++label) {
    double acc = weights_[label].back();
    for (const auto& [idx, value] : x) acc += weights_[label][size_t(idx)] * value;
    z[label] = acc;
  }
  double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  size_t argmax = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    z[i] /= sum;
    if (z[i] > z[argmax]) argmax = i;
  }

  Prediction p;
  p.label = space_.labels[argmax];
  p.probability = z[argmax];
  p.per_label_scores = z;
  return p;
}

BaselineModel train_baseline(const std::vector<TrainExample>& train,
                             const std::vector<TrainExample>& validation, const LabelSpace& space,
                             const BaselineHyperparams& hp) {
  if (train.empty()) throw EmptyInput("empty training split");

  std::map<std::string, size_t> label_counts;
  for (const auto& ex : train) {
    if (!space.contains(ex.label))
      throw LabelSpaceMismatch("training item labeled \"" + ex.label + "\" outside the task space");
    label_counts[ex.label] += 1;
  }
  for (const auto& label : space.labels)
    if (label_counts[label] < 2) throw InsufficientData(label);

  BaselineModel model;
  model.space_ = space;
  model.hp_ = hp;

  // Vocabulary and document frequencies from the training split only.
  std::map<std::string, int> df;
  std::vector<std::vector<std::string>> doc_terms;
  doc_terms.reserve(train.size());
  for (const auto& ex : train) {
    auto terms = terms_of(ex.text);
    std::vector<std::string> unique = terms;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& t : unique) df[t] += 1;
    doc_terms.push_back(std::move(terms));
  }

  for (const auto& [term, freq] : df) {
    if (freq < hp.min_term_freq) continue;
    int idx = int(model.vocab_.size());
    model.vocab_.emplace(term, idx);
    model.idf_.push_back(std::log((1.0 + double(train.size())) / (1.0 + double(freq))) + 1.0);
  }
  if (model.vocab_.empty()) throw EmptyInput("no vocabulary terms survive the frequency floor");

  logreg::Problem problem;
  problem.dim = int(model.vocab_.size());
  problem.n_labels = int(space.labels.size());
  problem.l2 = hp.l2;
  problem.x.reserve(train.size());
  problem.y.reserve(train.size());
  for (const auto& ex : train) {
    problem.x.push_back(model.featurize(ex.text));
    problem.y.push_back(space.index_of(ex.label));
  }

  model.weights_ = logreg::train(problem, hp.learning_rate, hp.epochs);

  if (!validation.empty()) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(validation.size());
    for (const auto& ex : validation)
      pairs.emplace_back(ex.label, model.predict(space.task, space, ex.text).label);
    model.validation_macro_f1_ = evaluate(pairs, space.labels).macro_f1;
  }
  return model;
}

// --- model file format ---

namespace {
constexpr std::string_view kModelMagic = "AFDKIT BASELINE MODEL v1";
}

void BaselineModel::save(const std::filesystem::path& file) const {
  json j;
  j["task"] = std::string(to_string(space_.task));
  j["labels"] = space_.labels;
  std::vector<std::string> terms(vocab_.size());
  for (const auto& [term, idx] : vocab_) terms[size_t(idx)] = term;
  j["vocabulary"] = terms;
  j["idf"] = idf_;
  j["weights"] = weights_;
  j["validation_macro_f1"] = validation_macro_f1_;
  j["hyperparams"] = {{"l2", hp_.l2},
                      {"epochs", hp_.epochs},
                      {"learning_rate", hp_.learning_rate},
                      {"min_term_freq", hp_.min_term_freq},
                      {"seed", hp_.seed}};

  std::ofstream out(file, std::ios::trunc);
  if (!out) throw Error("cannot write model file " + file.string());
  out << kModelMagic << "\n" << j.dump() << "\n";
}

BaselineModel BaselineModel::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open model file " + file.string());
  std::string magic;
  std::getline(in, magic);
  if (magic != kModelMagic)
    throw SchemaVersionMismatch("not a recognized baseline model file: " + file.string());

  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw CorruptRecord(file.string(), 2, e.what());
  }

  BaselineModel model;
  auto task = task_from_string(j.at("task").get<std::string>());
  if (!task) throw CorruptRecord(file.string(), 2, "unknown task");
  model.space_.task = *task;
  model.space_.labels = j.at("labels").get<std::vector<std::string>>();
  auto terms = j.at("vocabulary").get<std::vector<std::string>>();
  for (size_t i = 0; i < terms.size(); ++i) model.vocab_.emplace(terms[i], int(i));
  model.idf_ = j.at("idf").get<std::vector<double>>();
  model.weights_ = j.at("weights").get<logreg::Matrix>();
  model.validation_macro_f1_ = j.value("validation_macro_f1", 0.0);
  if (model.weights_.size() != model.space_.labels.size())
    throw CorruptRecord(file.string(), 2, "weight matrix row count != label count");
  for (const auto& row : model.weights_)
    if (row.size() != model.vocab_.size() + 1)
      throw CorruptRecord(file.string(), 2, "weight matrix width != vocabulary size + 1");
  return model;
}

}  // namespace afdkit
