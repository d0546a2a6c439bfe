#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppxfuse/dataset_prep.hpp"
#include "ppxfuse/fusion.hpp"
#include "ppxfuse/metrics.hpp"
#include "ppxfuse/probability.hpp"
#include "ppxfuse/simulate.hpp"
#include "ppxfuse/types.hpp"
#include "ppxfuse/weighting.hpp"

// Interchange formats. Row-oriented data is JSONL (one object per line), UTF-8
// without BOM. Reals are written with 17 significant digits so doubles
// survive a round trip. Readers reject invalid input; messages carry the file
// name, line number, and offending id where there is one.
namespace ppxfuse::io {

// Timestamp stamped on manifests written by deterministic commands.
inline constexpr std::string_view kEpochTimestamp = "1970-01-01T00:00:00Z";

struct BundleManifest {
  std::string model_name;
  std::vector<std::string> label_order;
  std::size_t n_rows = 0;
  std::string source_checkpoint;
  std::string created_at;  // RFC 3339

  bool operator==(const BundleManifest&) const = default;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view content);

// JSON number text with 17 significant digits. Throws DomainError on
// non-finite values.
std::string format_real(double value);

// JSON string literal (quoted and escaped).
std::string quote_string(std::string_view text);

// --- corpora ---------------------------------------------------------------
// {"id", "text", "language", "source", "sub_source"?, "model"?, "label"?}
// `label` is a class name from `labels`.
std::vector<CorpusRecord> parse_corpus(std::string_view content, const LabelSpace& labels,
                                       std::string_view source_name = "<corpus>");
std::vector<CorpusRecord> read_corpus(const std::filesystem::path& path, const LabelSpace& labels);
std::string format_corpus(std::span<const CorpusRecord> corpus, const LabelSpace& labels);
void write_corpus(const std::filesystem::path& path, std::span<const CorpusRecord> corpus, const LabelSpace& labels);

// --- logit bundles ----------------------------------------------------------
// Manifest: {"model_name", "label_order", "n_rows", "source_checkpoint",
// "created_at"}; rows: {"id", "logits": [C reals]} per line.
BundleManifest parse_manifest(std::string_view content, std::string_view source_name = "<manifest>");
LogitBundle parse_logits(const BundleManifest& manifest, std::string_view rows_content,
                         std::string_view source_name = "<rows>");
LogitBundle read_logits(const std::filesystem::path& manifest_path, const std::filesystem::path& rows_path);
std::string format_manifest(const BundleManifest& manifest);
std::string format_logit_rows(const LogitBundle& bundle);
void write_logits(const LogitBundle& bundle, const std::filesystem::path& manifest_path,
                  const std::filesystem::path& rows_path, std::string_view source_checkpoint,
                  std::string_view created_at = kEpochTimestamp);

// --- predictions --------------------------------------------------------------
// {"id", "predicted_label", "probabilities": {label: p} | null, "strategy"}
std::string format_predictions(const FusionResult& result);
void write_predictions(const FusionResult& result, const std::filesystem::path& path);
FusionResult parse_predictions(std::string_view content, const LabelSpace& labels,
                               std::string_view source_name = "<predictions>");
FusionResult read_predictions(const std::filesystem::path& path, const LabelSpace& labels);

// --- weights ----------------------------------------------------------------
// {"scheme", "models": [{"name", "perplexity"?, "accuracy"?, "weight"}]}
std::string format_weights(const WeightVector& weights);
WeightVector parse_weights(std::string_view content, std::string_view source_name = "<weights>");
WeightVector read_weights(const std::filesystem::path& path);
void write_weights(const WeightVector& weights, const std::filesystem::path& path);

// --- reports ----------------------------------------------------------------
// {"model_name", "perplexity", "n_examples", "mean_nll"} per line.
std::string format_perplexity_reports(std::span<const PerplexityReport> reports);
std::vector<PerplexityReport> parse_perplexity_reports(std::string_view content,
                                                       std::string_view source_name = "<reports>");
std::string format_evaluation(const EvaluationReport& report);

// Plain-text table: one row per class plus a micro/macro summary row.
std::string format_evaluation_table(const EvaluationReport& report, std::string_view title);

// Batch plan: one {"batch", "ids"} line per batch, then a {"summary": {...}}
// line carrying the padding waste.
std::string format_batch_plan(const BatchPlan& plan);

// --- configs ----------------------------------------------------------------
// {"caps": {"en": 40000, "zh": 20000}, "seed": 42}
BalancePlan parse_balance_plan(std::string_view content, std::string_view source_name = "<balance config>");
BalancePlan read_balance_plan(const std::filesystem::path& path);

// {"models": [{"name", "accuracy", "sharpness", "miscalibration"}], "n",
//  "prior", "seed"}
SimulationConfig parse_simulation_config(std::string_view content, std::string_view source_name = "<simulation>");
SimulationConfig read_simulation_config(const std::filesystem::path& path);

}  // namespace ppxfuse::io
