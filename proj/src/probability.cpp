#include "ppxfuse/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.size() < 2) throw DomainError("softmax needs at least 2 logits");
  for (double v : logits) {
    if (!std::isfinite(v)) throw DomainError("softmax input contains a non-finite value");
  }
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max_logit);
    sum += out[i];
  }
  // sum >= 1 because the max term is exp(0)
  for (double& v : out) v /= sum;
  return out;
}

ProbabilityMatrix to_probabilities(const LogitBundle& bundle) {
  std::vector<ProbabilityRow> rows;
  rows.reserve(bundle.size());
  for (const auto& row : bundle.rows()) rows.push_back({row.id, softmax(row.logits)});
  return ProbabilityMatrix(bundle.model_name(), bundle.label_space(), std::move(rows));
}

PerplexityReport perplexity(const ProbabilityMatrix& probs, const GoldLabels& gold) {
  const auto& rows = probs.rows();
  if (rows.empty()) throw DomainError(fmt::format("model '{}': perplexity of an empty matrix", probs.model_name()));

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].id < rows[b].id; });

  double log_sum = 0.0;
  for (std::size_t index : order) {
    const auto& row = rows[index];
    auto it = gold.find(row.id);
    if (it == gold.end()) {
      throw CoverageError(fmt::format("model '{}': no gold label for id '{}'", probs.model_name(), row.id));
    }
    if (it->second >= row.probabilities.size()) {
      throw CoverageError(fmt::format("id '{}': gold label {} outside the label space", row.id, it->second));
    }
    const double p = std::clamp(row.probabilities[it->second], kProbabilityFloor, 1.0);
    log_sum += std::log(p);
  }

  PerplexityReport report;
  report.model_name = probs.model_name();
  report.n_examples = rows.size();
  // + 0.0 turns a -0.0 from an all-ones sum into +0.0
  report.mean_nll = -log_sum / static_cast<double>(rows.size()) + 0.0;
  report.perplexity = std::exp(report.mean_nll);
  return report;
}

}  // namespace ppxfuse
