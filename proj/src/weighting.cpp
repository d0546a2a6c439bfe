#include "ppxfuse/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::inverse_perplexity:
      return "inverse_perplexity";
    case WeightScheme::accuracy:
      return "accuracy";
    case WeightScheme::uniform:
      return "uniform";
  }
  return "unknown";
}

WeightScheme parse_weight_scheme(std::string_view text) {
  if (text == "inverse_perplexity") return WeightScheme::inverse_perplexity;
  if (text == "accuracy") return WeightScheme::accuracy;
  if (text == "uniform") return WeightScheme::uniform;
  throw ConfigError(fmt::format("unknown weight scheme '{}'", text));
}

WeightVector::WeightVector(WeightScheme scheme, std::vector<ModelWeight> models)
    : scheme_(scheme), models_(std::move(models)) {
  if (models_.empty()) throw ConfigError("weight vector needs at least one model");
  std::unordered_set<std::string_view> names;
  double sum = 0.0;
  for (const auto& m : models_) {
    if (!names.insert(m.name).second) throw ConfigError(fmt::format("duplicate model '{}' in weights", m.name));
    if (!(m.weight >= 0.0) || !std::isfinite(m.weight)) {
      throw ConfigError(fmt::format("model '{}' has invalid weight {}", m.name, m.weight));
    }
    sum += m.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw ConfigError(fmt::format("weights sum to {:.17g}, expected 1", sum));
  }
}

WeightVector WeightVector::from_scores(WeightScheme scheme, std::vector<std::string> names,
                                       std::span<const double> scores) {
  if (names.size() != scores.size()) throw SchemaError("one score per model is required");
  if (names.empty()) throw ConfigError("weight vector needs at least one model");
  double total = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError(fmt::format("invalid weight score {}", s));
    total += s;
  }
  if (total == 0.0) throw DegenerateWeightsError("all weight scores are zero");
  std::vector<ModelWeight> models(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    models[i].name = std::move(names[i]);
    models[i].weight = scores[i] / total;
  }
  return WeightVector(scheme, std::move(models));
}

std::vector<double> WeightVector::weights() const {
  std::vector<double> out;
  out.reserve(models_.size());
  for (const auto& m : models_) out.push_back(m.weight);
  return out;
}

std::optional<double> WeightVector::weight_of(std::string_view name) const {
  for (const auto& m : models_) {
    if (m.name == name) return m.weight;
  }
  return std::nullopt;
}

WeightVector inverse_perplexity_weights(std::span<const PerplexityReport> reports) {
  std::vector<std::string> names;
  std::vector<double> scores;
  for (const auto& r : reports) {
    if (!(r.perplexity >= 1.0)) {
      throw DomainError(fmt::format("model '{}' has perplexity {} < 1", r.model_name, r.perplexity));
    }
    names.push_back(r.model_name);
    scores.push_back(1.0 / std::max(r.perplexity - 1.0, kPerplexityEpsilon));
  }
  auto base = WeightVector::from_scores(WeightScheme::inverse_perplexity, std::move(names), scores);
  auto models = base.models();
  for (std::size_t i = 0; i < models.size(); ++i) models[i].perplexity = reports[i].perplexity;
  return WeightVector(WeightScheme::inverse_perplexity, std::move(models));
}

WeightVector accuracy_weights(std::span<const std::pair<std::string, double>> accuracies) {
  std::vector<std::string> names;
  std::vector<double> scores;
  for (const auto& [name, acc] : accuracies) {
    if (!(acc >= 0.0 && acc <= 1.0)) throw DomainError(fmt::format("model '{}' has accuracy {} outside [0, 1]", name, acc));
    names.push_back(name);
    scores.push_back(acc);
  }
  auto base = WeightVector::from_scores(WeightScheme::accuracy, std::move(names), scores);
  auto models = base.models();
  for (std::size_t i = 0; i < models.size(); ++i) models[i].accuracy = accuracies[i].second;
  return WeightVector(WeightScheme::accuracy, std::move(models));
}

WeightVector uniform_weights(std::span<const std::string> names) {
  std::vector<double> ones(names.size(), 1.0);
  return WeightVector::from_scores(WeightScheme::uniform, {names.begin(), names.end()}, ones);
}

}  // namespace ppxfuse
