#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppxfuse/fusion.hpp"
#include "ppxfuse/metrics.hpp"
#include "ppxfuse/probability.hpp"
#include "ppxfuse/weighting.hpp"

// End-to-end pipeline shared by the CLI commands: align bundles, calibrate
// weights on a labeled split, fuse, and score.
namespace ppxfuse {

// CLI-facing fusion strategies. ppx and acc need weights from a calibration
// split (or a weights file).
enum class FuseStrategy { ppx, acc, mean, majority };

std::string_view to_string(FuseStrategy strategy);
FuseStrategy parse_fuse_strategy(std::string_view text);

struct AlignedMatrices {
  std::vector<ProbabilityMatrix> matrices;  // softmax of the aligned bundles
  std::vector<std::string> dropped_ids;
};

AlignedMatrices aligned_probabilities(std::span<const LogitBundle> bundles);

// One report per matrix, in input order. Every row needs a gold label.
std::vector<PerplexityReport> perplexity_reports(std::span<const ProbabilityMatrix> matrices, const GoldLabels& gold);

// Accuracy of each model's argmax over its rows, in input order.
std::vector<std::pair<std::string, double>> model_accuracies(std::span<const ProbabilityMatrix> matrices,
                                                             const GoldLabels& gold);

// Rows of each matrix whose id is in `calibration`. Throws CoverageError when
// a calibration id is missing from the matrices or nothing remains.
std::vector<ProbabilityMatrix> calibration_rows(std::span<const ProbabilityMatrix> matrices,
                                                const GoldLabels& calibration);

// Weights for ppx (inverse perplexity) or acc (accuracy) computed on the
// calibration rows.
WeightVector calibrate(std::span<const ProbabilityMatrix> matrices, const GoldLabels& calibration,
                       FuseStrategy strategy);

// Fuses every aligned row. `weights` is required for ppx/acc and ignored for
// mean/majority.
FusionResult fuse(std::span<const ProbabilityMatrix> matrices, FuseStrategy strategy,
                  const std::optional<WeightVector>& weights);

struct StrategyScore {
  std::string key;    // machine-readable, e.g. "inverse_perplexity"
  std::string title;  // table row label
  EvaluationReport report;
};

struct Comparison {
  std::vector<StrategyScore> rows;  // four ensemble strategies, then each single model
  WeightVector ppx_weights;
  WeightVector acc_weights;
};

// Runs all four strategies plus each model alone, calibrating on
// `calibration` and scoring on the labeled ids of `evaluation`.
Comparison compare_strategies(std::span<const ProbabilityMatrix> matrices, const GoldLabels& calibration,
                              const GoldLabels& evaluation);

// Aligned text table: strategy rows x micro/macro F1 columns.
std::string format_comparison_table(const Comparison& comparison);
std::string format_comparison_json(const Comparison& comparison);

}  // namespace ppxfuse
