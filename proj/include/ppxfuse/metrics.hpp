#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppxfuse/fusion.hpp"
#include "ppxfuse/types.hpp"

namespace ppxfuse {

struct ClassScores {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count
};

struct EvaluationReport {
  LabelSpace label_space = LabelSpace::binary();
  std::size_t n_examples = 0;
  // confusion[gold][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<ClassScores> per_class;
  double macro_f1 = 0.0;  // mean over every class in the label space
  double micro_f1 = 0.0;
  double accuracy = 0.0;
};

// (example id, predicted class index)
using PredictionList = std::vector<std::pair<std::string, std::size_t>>;

// Scores predictions against gold labels. Any 0/0 ratio is defined as 0.
// Throws CoverageError when a predicted id has no gold label and DomainError
// on an empty prediction set.
EvaluationReport evaluate(const PredictionList& predictions, const GoldLabels& gold, const LabelSpace& labels);
EvaluationReport evaluate(const FusionResult& result, const GoldLabels& gold);

// Drops rows whose id is not in `ids`; row order is preserved.
FusionResult restrict_rows(const FusionResult& result, const GoldLabels& ids);

}  // namespace ppxfuse
