#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppxfuse/types.hpp"
#include "ppxfuse/weighting.hpp"

namespace ppxfuse {

enum class Strategy { weighted_soft, mean, majority, single };

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view text);

struct FusedRow {
  std::string id;
  // Absent for majority voting.
  std::optional<std::vector<double>> probabilities;
  std::size_t predicted = 0;

  bool operator==(const FusedRow&) const = default;
};

struct FusionResult {
  Strategy strategy = Strategy::weighted_soft;
  LabelSpace label_space = LabelSpace::binary();
  std::vector<FusedRow> rows;
  std::optional<WeightVector> weights_used;
};

// Throws AlignmentError unless every matrix has the same ids in the same order
// and SchemaError when label spaces differ.
void check_aligned(std::span<const ProbabilityMatrix> matrices);

// p_ensemble(c) = sum_i w_i * p_i(c). Weights are matched to matrices by model
// name; a missing or extra model is a SchemaError. Terms are summed in matrix
// order, and each fused value is clamped to the [min, max] of its inputs to
// absorb rounding.
FusionResult weighted_soft_vote(std::span<const ProbabilityMatrix> matrices, const WeightVector& weights);

// Soft vote with uniform weights; identical values to weighted_soft_vote with
// uniform_weights().
FusionResult mean_ensemble(std::span<const ProbabilityMatrix> matrices);

// Plurality of per-model argmax votes. Ties go to the highest summed
// probability, then the lowest class index.
FusionResult majority_vote(std::span<const ProbabilityMatrix> matrices);

// One model's own argmax predictions wrapped as a FusionResult.
FusionResult single_model(const ProbabilityMatrix& matrix);

}  // namespace ppxfuse
