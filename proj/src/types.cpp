#include "ppxfuse/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

LabelSpace::LabelSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw SchemaError(fmt::format("label space needs at least 2 classes, got {}", labels_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw SchemaError("label names must be non-empty");
    if (!seen.insert(label).second) throw SchemaError(fmt::format("duplicate label '{}'", label));
  }
}

LabelSpace LabelSpace::binary() { return LabelSpace({"human", "machine"}); }

std::optional<std::size_t> LabelSpace::index_of(std::string_view name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

void validate_corpus(std::span<const CorpusRecord> corpus, const LabelSpace& labels) {
  std::unordered_set<std::string_view> seen;
  for (const auto& record : corpus) {
    if (record.id.empty()) throw ValidationError("corpus record with empty id");
    if (!seen.insert(record.id).second) {
      throw ValidationError(fmt::format("duplicate corpus id '{}'", record.id));
    }
    if (record.label && *record.label >= labels.size()) {
      throw ValidationError(
          fmt::format("record '{}' has label index {} outside {} classes", record.id, *record.label, labels.size()));
    }
  }
}

GoldLabels gold_labels(std::span<const CorpusRecord> corpus) {
  GoldLabels gold;
  for (const auto& record : corpus) {
    if (record.label) gold.emplace(record.id, *record.label);
  }
  return gold;
}

LogitBundle::LogitBundle(std::string model_name, LabelSpace labels, std::vector<LogitRow> rows)
    : model_name_(std::move(model_name)), labels_(std::move(labels)), rows_(std::move(rows)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& row : rows_) {
    if (row.id.empty()) throw ValidationError(fmt::format("model '{}': row with empty id", model_name_));
    if (!seen.insert(row.id).second) {
      throw ValidationError(fmt::format("model '{}': duplicate id '{}'", model_name_, row.id));
    }
    if (row.logits.size() != labels_.size()) {
      throw SchemaError(fmt::format("model '{}': id '{}' has {} logits, expected {}", model_name_, row.id,
                                    row.logits.size(), labels_.size()));
    }
    for (double v : row.logits) {
      if (!std::isfinite(v)) {
        throw ValidationError(fmt::format("model '{}': id '{}' has a non-finite logit", model_name_, row.id));
      }
    }
  }
}

ProbabilityMatrix::ProbabilityMatrix(std::string model_name, LabelSpace labels, std::vector<ProbabilityRow> rows)
    : model_name_(std::move(model_name)), labels_(std::move(labels)), rows_(std::move(rows)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& row : rows_) {
    if (!seen.insert(row.id).second) {
      throw ValidationError(fmt::format("model '{}': duplicate id '{}'", model_name_, row.id));
    }
    if (row.probabilities.size() != labels_.size()) {
      throw SchemaError(fmt::format("model '{}': id '{}' has {} probabilities, expected {}", model_name_, row.id,
                                    row.probabilities.size(), labels_.size()));
    }
    double sum = 0.0;
    for (double p : row.probabilities) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(fmt::format("model '{}': id '{}' has probability {} outside [0, 1]", model_name_, row.id, p));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw DomainError(fmt::format("model '{}': id '{}' probabilities sum to {}", model_name_, row.id, sum));
    }
  }
}

ProbabilityMatrix ProbabilityMatrix::restricted_to(const GoldLabels& ids) const {
  std::vector<ProbabilityRow> kept;
  for (const auto& row : rows_) {
    if (ids.contains(row.id)) kept.push_back(row);
  }
  return ProbabilityMatrix(model_name_, labels_, std::move(kept));
}

Alignment align_bundles(std::span<const LogitBundle> bundles) {
  if (bundles.empty()) throw AlignmentError("no bundles to align");
  const LabelSpace& labels = bundles.front().label_space();
  for (const auto& bundle : bundles) {
    if (bundle.label_space() != labels) {
      throw SchemaError(fmt::format("model '{}' has a different label space than model '{}'", bundle.model_name(),
                                    bundles.front().model_name()));
    }
  }

  std::set<std::string> common;
  std::set<std::string> all;
  for (const auto& row : bundles.front().rows()) common.insert(row.id);
  for (const auto& bundle : bundles) {
    std::set<std::string> ids;
    for (const auto& row : bundle.rows()) ids.insert(row.id);
    all.insert(ids.begin(), ids.end());
    std::set<std::string> kept;
    std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(), std::inserter(kept, kept.end()));
    common = std::move(kept);
  }
  if (common.empty()) throw AlignmentError("bundles share no example ids");

  Alignment out;
  std::set_difference(all.begin(), all.end(), common.begin(), common.end(), std::back_inserter(out.dropped_ids));
  out.bundles.reserve(bundles.size());
  for (const auto& bundle : bundles) {
    std::vector<LogitRow> rows;
    rows.reserve(common.size());
    for (const auto& row : bundle.rows()) {
      if (common.contains(row.id)) rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const LogitRow& a, const LogitRow& b) { return a.id < b.id; });
    out.bundles.emplace_back(bundle.model_name(), labels, std::move(rows));
  }
  return out;
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace ppxfuse
