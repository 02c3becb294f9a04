#include "afdkit/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>

#include "afdkit/errors.hpp"

namespace afdkit {

using json = nlohmann::json;

EvalReport evaluate(const std::vector<std::pair<std::string, std::string>>& gold_predicted,
                    const std::vector<std::string>& label_space) {
  if (gold_predicted.empty()) throw EmptyInput("no prediction pairs to evaluate");
  if (label_space.empty()) throw PreconditionViolation("empty label space");

  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < label_space.size(); ++i) {
    if (!index.emplace(label_space[i], i).second)
      throw PreconditionViolation("duplicate label in label space: \"" + label_space[i] + "\"");
  }

  const size_t n_labels = label_space.size();
  EvalReport report;
  report.labels = label_space;
  report.confusion.assign(n_labels, std::vector<size_t>(n_labels, 0));
  report.total = gold_predicted.size();

  size_t correct = 0;
  for (const auto& [gold, predicted] : gold_predicted) {
    auto g = index.find(gold);
    auto p = index.find(predicted);
    if (g == index.end())
      throw UnknownLabelInPairs("gold label \"" + gold + "\" outside the label space");
    if (p == index.end())
      throw UnknownLabelInPairs("predicted label \"" + predicted + "\" outside the label space");
    report.confusion[g->second][p->second] += 1;
    if (g->second == p->second) ++correct;
  }
  report.accuracy = double(correct) / double(report.total);

  double macro_p = 0, macro_r = 0, macro_f1 = 0;
  for (size_t i = 0; i < n_labels; ++i) {
    size_t tp = report.confusion[i][i];
    size_t gold_count = 0, predicted_count = 0;
    for (size_t j = 0; j < n_labels; ++j) {
      gold_count += report.confusion[i][j];
      predicted_count += report.confusion[j][i];
    }

    PerLabelMetrics m;
    m.label = label_space[i];
    m.support = gold_count;
    if (predicted_count == 0) {
      m.precision_zero_div = true;
    } else {
      m.precision = double(tp) / double(predicted_count);
    }
    if (gold_count == 0) {
      m.recall_zero_div = true;
    } else {
      m.recall = double(tp) / double(gold_count);
    }
    if (m.precision + m.recall == 0) {
      m.f1_zero_div = true;
    } else {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    macro_p += m.precision;
    macro_r += m.recall;
    macro_f1 += m.f1;
    report.per_label.push_back(std::move(m));
  }
  report.macro_precision = macro_p / double(n_labels);
  report.macro_recall = macro_r / double(n_labels);
  report.macro_f1 = macro_f1 / double(n_labels);
  return report;
}

std::string EvalReport::render_table() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  size_t width = 5;
  for (const auto& m : per_label) width = std::max(width, m.label.size());

  out << std::left << std::setw(int(width) + 2) << "label"
      << std::right << std::setw(10) << "precision" << std::setw(10) << "recall" << std::setw(10)
      << "f1" << std::setw(10) << "support"
      << "\n";
  for (const auto& m : per_label) {
    out << std::left << std::setw(int(width) + 2) << m.label << std::right << std::setw(10)
        << m.precision << std::setw(10) << m.recall << std::setw(10) << m.f1 << std::setw(10)
        << m.support;
    if (m.precision_zero_div || m.recall_zero_div) out << "  (zero-division)";
    out << "\n";
  }
  out << "\n"
      << "accuracy        " << accuracy << "\n"
      << "macro precision " << macro_precision << "\n"
      << "macro recall    " << macro_recall << "\n"
      << "macro F1        " << macro_f1 << "\n";
  return out.str();
}

std::string EvalReport::confusion_csv() const {
  std::ostringstream out;
  out << "gold\\predicted";
  for (const auto& label : labels) out << "," << label;
  out << "\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    out << labels[i];
    for (size_t j = 0; j < labels.size(); ++j) out << "," << confusion[i][j];
    out << "\n";
  }
  return out.str();
}

std::string EvalReport::to_json_string() const {
  json per_label_json = json::object();
  for (const auto& m : per_label) {
    per_label_json[m.label] = {
        {"precision", m.precision},
        {"recall", m.recall},
        {"f1", m.f1},
        {"support", m.support},
        {"precision_zero_div", m.precision_zero_div},
        {"recall_zero_div", m.recall_zero_div},
    };
  }
  json j = {
      {"labels", labels},
      {"accuracy", accuracy},
      {"macro_precision", macro_precision},
      {"macro_recall", macro_recall},
      {"macro_f1", macro_f1},
      {"per_label", per_label_json},
      {"confusion", confusion},
      {"total", total},
  };
  return j.dump(2);
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return std::nullopt;  // zero variance
  return sxy / std::sqrt(sxx * syy);
}

CorrelationReport correlate(const std::vector<ScoredDiscussion>& discussions,
                            const LabelSpace& aux_space,
                            const std::vector<std::string>& outcome_labels,
                            AggregationMode mode) {
  if (discussions.size() < 3)
    throw PreconditionViolation("correlation needs at least 3 discussions");
  for (const auto& d : discussions)
    if (d.sentence_predictions.empty())
      throw PreconditionViolation("every discussion needs at least one scored sentence");

  const size_t n = discussions.size();
  const size_t n_aux = aux_space.labels.size();

  // feature matrix: per discussion, per aux class
  std::vector<std::vector<double>> features(n, std::vector<double>(n_aux, 0.0));
  for (size_t i = 0; i < n; ++i) {
    const auto& preds = discussions[i].sentence_predictions;
    for (const auto& p : preds) {
      if (mode == AggregationMode::MeanProbability && p.per_label_scores) {
        const auto& scores = *p.per_label_scores;
        if (scores.size() != n_aux)
          throw PreconditionViolation("sentence scores do not match the auxiliary label space");
        for (size_t c = 0; c < n_aux; ++c) features[i][c] += scores[c];
      } else {
        // vote fraction; also the fallback when distributions are absent
        int idx = aux_space.index_of(p.label);
        if (idx < 0)
          throw PreconditionViolation("sentence label \"" + p.label +
                                      "\" outside the auxiliary label space");
        features[i][size_t(idx)] += 1.0;
      }
    }
    for (size_t c = 0; c < n_aux; ++c) features[i][c] /= double(preds.size());
  }

  CorrelationReport report;
  report.aux_classes = aux_space.labels;
  report.outcome_labels = outcome_labels;
  report.sample_size = n;
  report.mode = mode;
  report.r.assign(n_aux, std::vector<std::optional<double>>(outcome_labels.size()));

  for (size_t c = 0; c < n_aux; ++c) {
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = features[i][c];
    for (size_t o = 0; o < outcome_labels.size(); ++o) {
      std::vector<double> y(n);
      for (size_t i = 0; i < n; ++i)
        y[i] = discussions[i].outcome_label == outcome_labels[o] ? 1.0 : 0.0;
      report.r[c][o] = pearson(x, y);
    }
  }
  return report;
}

std::string CorrelationReport::render_table() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  size_t width = 4;
  for (const auto& c : aux_classes) width = std::max(width, c.size());

  out << std::left << std::setw(int(width) + 2) << "";
  for (const auto& label : outcome_labels) out << std::right << std::setw(14) << label;
  out << "\n";
  for (size_t c = 0; c < aux_classes.size(); ++c) {
    out << std::left << std::setw(int(width) + 2) << aux_classes[c];
    for (size_t o = 0; o < outcome_labels.size(); ++o) {
      if (r[c][o])
        out << std::right << std::setw(14) << *r[c][o];
      else
        out << std::right << std::setw(14) << "n/a";
    }
    out << "\n";
  }
  out << "n = " << sample_size << "\n";
  return out.str();
}

std::string CorrelationReport::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "aux_class";
  for (const auto& label : outcome_labels) out << "," << label;
  out << "\n";
  for (size_t c = 0; c < aux_classes.size(); ++c) {
    out << aux_classes[c];
    for (size_t o = 0; o < outcome_labels.size(); ++o) {
      out << ",";
      if (r[c][o]) out << *r[c][o];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace afdkit
