#include "ppxfuse/compare.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ppxfuse/errors.hpp"
#include "ppxfuse/io.hpp"

namespace ppxfuse {

std::string_view to_string(FuseStrategy strategy) {
  switch (strategy) {
    case FuseStrategy::ppx:
      return "ppx";
    case FuseStrategy::acc:
      return "acc";
    case FuseStrategy::mean:
      return "mean";
    case FuseStrategy::majority:
      return "majority";
  }
  return "unknown";
}

FuseStrategy parse_fuse_strategy(std::string_view text) {
  if (text == "ppx") return FuseStrategy::ppx;
  if (text == "acc") return FuseStrategy::acc;
  if (text == "mean") return FuseStrategy::mean;
  if (text == "majority") return FuseStrategy::majority;
  throw ValidationError(fmt::format("unknown strategy '{}' (expected ppx, acc, mean, majority)", text));
}

AlignedMatrices aligned_probabilities(std::span<const LogitBundle> bundles) {
  Alignment alignment = align_bundles(bundles);
  AlignedMatrices out;
  out.dropped_ids = std::move(alignment.dropped_ids);
  for (const auto& bundle : alignment.bundles) out.matrices.push_back(to_probabilities(bundle));
  return out;
}

std::vector<PerplexityReport> perplexity_reports(std::span<const ProbabilityMatrix> matrices, const GoldLabels& gold) {
  std::vector<PerplexityReport> reports;
  for (const auto& m : matrices) reports.push_back(perplexity(m, gold));
  return reports;
}

std::vector<std::pair<std::string, double>> model_accuracies(std::span<const ProbabilityMatrix> matrices,
                                                             const GoldLabels& gold) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& m : matrices) out.emplace_back(m.model_name(), evaluate(single_model(m), gold).accuracy);
  return out;
}

std::vector<ProbabilityMatrix> calibration_rows(std::span<const ProbabilityMatrix> matrices,
                                                const GoldLabels& calibration) {
  if (calibration.empty()) throw CoverageError("calibration split has no labeled examples");
  std::vector<ProbabilityMatrix> out;
  for (const auto& m : matrices) {
    out.push_back(m.restricted_to(calibration));
    if (out.back().size() != calibration.size()) {
      std::vector<std::string> missing;
      GoldLabels present;
      for (const auto& row : out.back().rows()) present.emplace(row.id, 0);
      for (const auto& [id, label] : calibration) {
        if (!present.contains(id)) missing.push_back(id);
      }
      std::sort(missing.begin(), missing.end());
      throw CoverageError(fmt::format("model '{}' has no row for {} calibration id(s), first '{}'", m.model_name(),
                                      missing.size(), missing.front()));
    }
  }
  return out;
}

WeightVector calibrate(std::span<const ProbabilityMatrix> matrices, const GoldLabels& calibration,
                       FuseStrategy strategy) {
  const auto rows = calibration_rows(matrices, calibration);
  switch (strategy) {
    case FuseStrategy::ppx: {
      const auto reports = perplexity_reports(rows, calibration);
      return inverse_perplexity_weights(reports);
    }
    case FuseStrategy::acc: {
      const auto accuracies = model_accuracies(rows, calibration);
      return accuracy_weights(accuracies);
    }
    default:
      break;
  }
  throw ValidationError(fmt::format("strategy '{}' takes no calibrated weights", to_string(strategy)));
}

FusionResult fuse(std::span<const ProbabilityMatrix> matrices, FuseStrategy strategy,
                  const std::optional<WeightVector>& weights) {
  switch (strategy) {
    case FuseStrategy::ppx:
    case FuseStrategy::acc:
      if (!weights) throw ValidationError(fmt::format("strategy '{}' needs weights", to_string(strategy)));
      return weighted_soft_vote(matrices, *weights);
    case FuseStrategy::mean:
      return mean_ensemble(matrices);
    case FuseStrategy::majority:
      return majority_vote(matrices);
  }
  throw Error("unhandled strategy");
}

namespace {

EvaluationReport score(const FusionResult& fused, const GoldLabels& evaluation) {
  const FusionResult kept = restrict_rows(fused, evaluation);
  if (kept.rows.size() != evaluation.size()) {
    throw CoverageError(fmt::format("{} of {} evaluation ids are missing from the aligned bundles",
                                    evaluation.size() - kept.rows.size(), evaluation.size()));
  }
  return evaluate(kept, evaluation);
}

}  // namespace

Comparison compare_strategies(std::span<const ProbabilityMatrix> matrices, const GoldLabels& calibration,
                              const GoldLabels& evaluation) {
  if (evaluation.empty()) throw CoverageError("evaluation split has no labeled examples");
  Comparison out{{}, calibrate(matrices, calibration, FuseStrategy::ppx),
                 calibrate(matrices, calibration, FuseStrategy::acc)};
  out.rows.push_back({"inverse_perplexity", "Inverse Perplexity Weighting",
                      score(weighted_soft_vote(matrices, out.ppx_weights), evaluation)});
  out.rows.push_back({"accuracy_weighting", "Accuracy Based Weighting",
                      score(weighted_soft_vote(matrices, out.acc_weights), evaluation)});
  out.rows.push_back({"mean", "Mean Ensemble", score(mean_ensemble(matrices), evaluation)});
  out.rows.push_back({"majority", "Majority Voting", score(majority_vote(matrices), evaluation)});
  for (const auto& m : matrices) {
    out.rows.push_back({"single:" + m.model_name(), "Single: " + m.model_name(), score(single_model(m), evaluation)});
  }
  return out;
}

std::string format_comparison_table(const Comparison& comparison) {
  std::size_t width = std::string_view("Ensemble Technique").size();
  for (const auto& row : comparison.rows) width = std::max(width, row.title.size());
  std::string out = fmt::format("{:<{}} | {:>8} | {:>8}\n", "Ensemble Technique", width, "Micro F1", "Macro F1");
  out += fmt::format("{:-<{}}-+-{:-<8}-+-{:-<8}\n", "", width, "", "");
  for (const auto& row : comparison.rows) {
    out += fmt::format("{:<{}} | {:>8.4f} | {:>8.4f}\n", row.title, width, row.report.micro_f1, row.report.macro_f1);
  }
  return out;
}

std::string format_comparison_json(const Comparison& comparison) {
  std::string out = "{\n  \"strategies\": [\n";
  for (std::size_t i = 0; i < comparison.rows.size(); ++i) {
    const auto& row = comparison.rows[i];
    out += fmt::format(
        "    {{\"strategy\": {}, \"n_examples\": {}, \"micro_f1\": {}, \"macro_f1\": {}, \"accuracy\": {}}}{}\n",
        io::quote_string(row.key), row.report.n_examples, io::format_real(row.report.micro_f1), io::format_real(row.report.macro_f1),
        io::format_real(row.report.accuracy), i + 1 < comparison.rows.size() ? "," : "");
  }
  out += "  ],\n  \"weights\": {\n    \"inverse_perplexity\": [";
  auto weights = [](const WeightVector& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      s += fmt::format("{}{{\"name\": {}, \"weight\": {}}}", i > 0 ? ", " : "", io::quote_string(w.models()[i].name),
                       io::format_real(w.models()[i].weight));
    }
    return s;
  };
  out += weights(comparison.ppx_weights);
  out += "],\n    \"accuracy\": [";
  out += weights(comparison.acc_weights);
  out += "]\n  }\n}\n";
  return out;
}

}  // namespace ppxfuse
