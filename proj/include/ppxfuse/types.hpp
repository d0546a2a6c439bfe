#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ppxfuse {

// Ordered set of class names. Class index i means labels()[i] everywhere in
// the library. Names are matched case-sensitively.
class LabelSpace {
 public:
  explicit LabelSpace(std::vector<std::string> labels);

  // {"human", "machine"}, the label order of the detection task.
  static LabelSpace binary();

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& name(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const LabelSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

struct CorpusRecord {
  std::string id;
  std::string text;
  std::string language;
  std::string source;
  std::string sub_source;
  std::string model;
  std::optional<std::size_t> label;

  bool operator==(const CorpusRecord&) const = default;
};

// example id -> gold class index
using GoldLabels = std::unordered_map<std::string, std::size_t>;

// Throws ValidationError on empty/duplicate ids or out-of-range labels.
void validate_corpus(std::span<const CorpusRecord> corpus, const LabelSpace& labels);

// Gold map built from the labeled records; unlabeled records are skipped.
GoldLabels gold_labels(std::span<const CorpusRecord> corpus);

struct LogitRow {
  std::string id;
  std::vector<double> logits;

  bool operator==(const LogitRow&) const = default;
};

// One model's raw class scores. Every row has exactly C finite logits and ids
// are unique; the constructor enforces both.
class LogitBundle {
 public:
  LogitBundle(std::string model_name, LabelSpace labels, std::vector<LogitRow> rows);

  const std::string& model_name() const noexcept { return model_name_; }
  const LabelSpace& label_space() const noexcept { return labels_; }
  const std::vector<LogitRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  bool operator==(const LogitBundle&) const = default;

 private:
  std::string model_name_;
  LabelSpace labels_;
  std::vector<LogitRow> rows_;
};

struct ProbabilityRow {
  std::string id;
  std::vector<double> probabilities;

  bool operator==(const ProbabilityRow&) const = default;
};

inline constexpr double kRowSumTolerance = 1e-9;

// Per-example class distributions of one model. Each row lies in [0, 1] and
// sums to 1 within kRowSumTolerance.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix(std::string model_name, LabelSpace labels, std::vector<ProbabilityRow> rows);

  const std::string& model_name() const noexcept { return model_name_; }
  const LabelSpace& label_space() const noexcept { return labels_; }
  const std::vector<ProbabilityRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  // Rows whose id is in `ids`, in this matrix's row order.
  ProbabilityMatrix restricted_to(const GoldLabels& ids) const;

  bool operator==(const ProbabilityMatrix&) const = default;

 private:
  std::string model_name_;
  LabelSpace labels_;
  std::vector<ProbabilityRow> rows_;
};

struct Alignment {
  std::vector<LogitBundle> bundles;
  // Ids present in some bundle but not in all of them, sorted.
  std::vector<std::string> dropped_ids;
};

// Restricts every bundle to the common id set and orders rows
// lexicographically by id. Throws SchemaError when label spaces differ and
// AlignmentError when the intersection is empty.
Alignment align_bundles(std::span<const LogitBundle> bundles);

// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

}  // namespace ppxfuse
