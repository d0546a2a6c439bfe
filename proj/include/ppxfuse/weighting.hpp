#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppxfuse/probability.hpp"

namespace ppxfuse {

enum class WeightScheme { inverse_perplexity, accuracy, uniform };

std::string_view to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(std::string_view text);

// Floor on (P - 1) so a model with P == 1 gets a dominant but finite weight.
inline constexpr double kPerplexityEpsilon = 1e-9;
inline constexpr double kWeightSumTolerance = 1e-12;

struct ModelWeight {
  std::string name;
  double weight = 0.0;
  std::optional<double> perplexity;
  std::optional<double> accuracy;

  bool operator==(const ModelWeight&) const = default;
};

// One nonnegative weight per model, summing to 1. The perplexity/accuracy
// fields record what the weight was derived from and travel into reports.
class WeightVector {
 public:
  WeightVector(WeightScheme scheme, std::vector<ModelWeight> models);

  // Normalizes nonnegative scores to weights. Throws DegenerateWeightsError
  // when every score is zero.
  static WeightVector from_scores(WeightScheme scheme, std::vector<std::string> names, std::span<const double> scores);

  WeightScheme scheme() const noexcept { return scheme_; }
  const std::vector<ModelWeight>& models() const noexcept { return models_; }
  std::size_t size() const noexcept { return models_.size(); }
  std::vector<double> weights() const;

  // Weight of the named model, or nullopt.
  std::optional<double> weight_of(std::string_view name) const;

  bool operator==(const WeightVector&) const = default;

 private:
  WeightScheme scheme_;
  std::vector<ModelWeight> models_;
};

// w_i = (1 / max(P_i - 1, eps)) / sum_j (1 / max(P_j - 1, eps))
WeightVector inverse_perplexity_weights(std::span<const PerplexityReport> reports);

// w_i = accuracy_i / sum_j accuracy_j
WeightVector accuracy_weights(std::span<const std::pair<std::string, double>> accuracies);

WeightVector uniform_weights(std::span<const std::string> names);

}  // namespace ppxfuse
