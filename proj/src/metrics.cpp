#include "ppxfuse/metrics.hpp"

#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double precision, double recall) {
  if (precision == recall) return precision;
  const double den = precision + recall;
  return 2.0 * precision * recall / den;
}

}  // namespace

EvaluationReport evaluate(const PredictionList& predictions, const GoldLabels& gold, const LabelSpace& labels) {
  if (predictions.empty()) throw DomainError("cannot evaluate an empty prediction set");
  const std::size_t n_classes = labels.size();

  EvaluationReport report;
  report.label_space = labels;
  report.n_examples = predictions.size();
  report.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));

  for (const auto& [id, predicted] : predictions) {
    auto it = gold.find(id);
    if (it == gold.end()) throw CoverageError(fmt::format("no gold label for predicted id '{}'", id));
    if (it->second >= n_classes || predicted >= n_classes) {
      throw ValidationError(fmt::format("id '{}': class index outside the label space", id));
    }
    ++report.confusion[it->second][predicted];
  }

  std::size_t correct = 0;
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    const std::size_t tp = report.confusion[c][c];
    std::size_t predicted_c = 0;
    std::size_t gold_c = 0;
    for (std::size_t k = 0; k < n_classes; ++k) {
      predicted_c += report.confusion[k][c];
      gold_c += report.confusion[c][k];
    }
    ClassScores scores;
    scores.label = labels.name(c);
    scores.precision = ratio(tp, predicted_c);
    scores.recall = ratio(tp, gold_c);
    scores.f1 = harmonic(scores.precision, scores.recall);
    scores.support = gold_c;
    report.per_class.push_back(scores);
    f1_sum += scores.f1;
    correct += tp;
  }
  report.macro_f1 = f1_sum / static_cast<double>(n_classes);

  // Pooled over classes every error is one FP and one FN.
  const std::size_t tp = correct;
  const std::size_t errors = report.n_examples - correct;
  const double micro_p = ratio(tp, tp + errors);
  const double micro_r = ratio(tp, tp + errors);
  report.micro_f1 = harmonic(micro_p, micro_r);
  report.accuracy = ratio(correct, report.n_examples);
  return report;
}

EvaluationReport evaluate(const FusionResult& result, const GoldLabels& gold) {
  PredictionList predictions;
  predictions.reserve(result.rows.size());
  for (const auto& row : result.rows) predictions.emplace_back(row.id, row.predicted);
  return evaluate(predictions, gold, result.label_space);
}

FusionResult restrict_rows(const FusionResult& result, const GoldLabels& ids) {
  FusionResult out;
  out.strategy = result.strategy;
  out.label_space = result.label_space;
  out.weights_used = result.weights_used;
  for (const auto& row : result.rows) {
    if (ids.contains(row.id)) out.rows.push_back(row);
  }
  return out;
}

}  // namespace ppxfuse
