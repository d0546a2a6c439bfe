#include "ppxfuse/fusion.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::weighted_soft:
      return "weighted_soft";
    case Strategy::mean:
      return "mean";
    case Strategy::majority:
      return "majority";
    case Strategy::single:
      return "single";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "weighted_soft") return Strategy::weighted_soft;
  if (text == "mean") return Strategy::mean;
  if (text == "majority") return Strategy::majority;
  if (text == "single") return Strategy::single;
  throw ValidationError(fmt::format("unknown strategy '{}'", text));
}

void check_aligned(std::span<const ProbabilityMatrix> matrices) {
  if (matrices.empty()) throw AlignmentError("fusion needs at least one model");
  const auto& first = matrices.front();
  if (first.size() == 0) throw DomainError("fusion needs at least one example");
  for (const auto& m : matrices) {
    if (m.label_space() != first.label_space()) {
      throw SchemaError(fmt::format("model '{}' has a different label space than '{}'", m.model_name(),
                                    first.model_name()));
    }
    if (m.size() != first.size()) {
      throw AlignmentError(fmt::format("model '{}' has {} rows, '{}' has {}", m.model_name(), m.size(),
                                       first.model_name(), first.size()));
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (m.rows()[r].id != first.rows()[r].id) {
        throw AlignmentError(fmt::format("row {} is '{}' in model '{}' but '{}' in model '{}'", r, m.rows()[r].id,
                                         m.model_name(), first.rows()[r].id, first.model_name()));
      }
    }
  }
}

namespace {

std::vector<double> weights_in_matrix_order(std::span<const ProbabilityMatrix> matrices, const WeightVector& weights) {
  if (weights.size() != matrices.size()) {
    throw SchemaError(fmt::format("{} weights for {} models", weights.size(), matrices.size()));
  }
  std::vector<double> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) {
    auto w = weights.weight_of(m.model_name());
    if (!w) throw SchemaError(fmt::format("no weight for model '{}'", m.model_name()));
    out.push_back(*w);
  }
  return out;
}

}  // namespace

FusionResult weighted_soft_vote(std::span<const ProbabilityMatrix> matrices, const WeightVector& weights) {
  check_aligned(matrices);
  const std::vector<double> w = weights_in_matrix_order(matrices, weights);
  const std::size_t n_classes = matrices.front().label_space().size();

  FusionResult result;
  result.strategy = Strategy::weighted_soft;
  result.label_space = matrices.front().label_space();
  result.weights_used = weights;
  result.rows.reserve(matrices.front().size());

  for (std::size_t r = 0; r < matrices.front().size(); ++r) {
    std::vector<double> fused(n_classes, 0.0);
    for (std::size_t c = 0; c < n_classes; ++c) {
      double lo = matrices.front().rows()[r].probabilities[c];
      double hi = lo;
      for (std::size_t i = 0; i < matrices.size(); ++i) {
        const double p = matrices[i].rows()[r].probabilities[c];
        fused[c] += w[i] * p;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      // rounding can leave the sum a few ulps outside the convex hull
      fused[c] = std::clamp(fused[c], lo, hi);
    }
    double sum = 0.0;
    for (double v : fused) sum += v;
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(fmt::format("fused row '{}' sums to {:.17g}", matrices.front().rows()[r].id, sum));
    }
    const std::size_t predicted = argmax(fused);
    result.rows.push_back({matrices.front().rows()[r].id, std::move(fused), predicted});
  }
  return result;
}

FusionResult mean_ensemble(std::span<const ProbabilityMatrix> matrices) {
  check_aligned(matrices);
  std::vector<std::string> names;
  for (const auto& m : matrices) names.push_back(m.model_name());
  FusionResult result = weighted_soft_vote(matrices, uniform_weights(names));
  result.strategy = Strategy::mean;
  return result;
}

FusionResult majority_vote(std::span<const ProbabilityMatrix> matrices) {
  check_aligned(matrices);
  const std::size_t n_classes = matrices.front().label_space().size();

  FusionResult result;
  result.strategy = Strategy::majority;
  result.label_space = matrices.front().label_space();
  result.rows.reserve(matrices.front().size());

  for (std::size_t r = 0; r < matrices.front().size(); ++r) {
    std::vector<std::size_t> votes(n_classes, 0);
    std::vector<double> mass(n_classes, 0.0);
    for (const auto& m : matrices) {
      const auto& p = m.rows()[r].probabilities;
      ++votes[argmax(p)];
      for (std::size_t c = 0; c < n_classes; ++c) mass[c] += p[c];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < n_classes; ++c) {
      if (votes[c] > votes[best] || (votes[c] == votes[best] && mass[c] > mass[best])) best = c;
    }
    result.rows.push_back({matrices.front().rows()[r].id, std::nullopt, best});
  }
  return result;
}

FusionResult single_model(const ProbabilityMatrix& matrix) {
  if (matrix.size() == 0) throw DomainError("fusion needs at least one example");
  FusionResult result;
  result.strategy = Strategy::single;
  result.label_space = matrix.label_space();
  result.rows.reserve(matrix.size());
  for (const auto& row : matrix.rows()) {
    result.rows.push_back({row.id, row.probabilities, argmax(row.probabilities)});
  }
  return result;
}

}  // namespace ppxfuse
