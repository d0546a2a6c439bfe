#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ppxfuse/types.hpp"

namespace ppxfuse {

// Gold-class probabilities are clamped to [kProbabilityFloor, 1] before the
// log so a single zero cannot make the perplexity infinite.
inline constexpr double kProbabilityFloor = 1e-12;

struct PerplexityReport {
  std::string model_name;
  double perplexity = 1.0;  // exp(mean_nll), >= 1
  std::size_t n_examples = 0;
  double mean_nll = 0.0;

  bool operator==(const PerplexityReport&) const = default;
};

// Shift-invariant softmax: subtracts the max logit before exponentiating.
// Throws DomainError on non-finite input or fewer than 2 entries.
std::vector<double> softmax(std::span<const double> logits);

ProbabilityMatrix to_probabilities(const LogitBundle& bundle);

// Classification perplexity of `probs` against gold labels:
//   P = exp(-(1/N) * sum_i log p(y_i | x_i))
// Rows are summed left to right in lexicographic id order, so the result does
// not depend on the matrix row order. Throws CoverageError if any row lacks a
// gold label and DomainError on an empty matrix.
PerplexityReport perplexity(const ProbabilityMatrix& probs, const GoldLabels& gold);

}  // namespace ppxfuse
