// ppxfuse: ensemble fusion of per-model classifier logits.
//
// Exit codes: 0 success, 1 internal error, 2 usage or validation error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ppxfuse/compare.hpp"
#include "ppxfuse/dataset_prep.hpp"
#include "ppxfuse/errors.hpp"
#include "ppxfuse/io.hpp"
#include "ppxfuse/simulate.hpp"

namespace fs = std::filesystem;
using namespace ppxfuse;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct UsageError : InputError {
  using InputError::InputError;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::vector<std::string> labels{"human", "machine"};
  bool quiet = false;
};

// --seed wins over PPXFUSE_SEED; nullopt means "use the config file or default".
std::optional<std::uint64_t> resolve_seed(const GlobalOptions& g) {
  if (g.seed) return g.seed;
  if (const char* env = std::getenv("PPXFUSE_SEED"); env != nullptr && *env != '\0') {
    static const std::regex digits("[0-9]+");
    if (!std::regex_match(env, digits)) throw UsageError(fmt::format("PPXFUSE_SEED='{}' is not an unsigned integer", env));
    try {
      return std::stoull(env);
    } catch (const std::out_of_range&) {
      throw UsageError(fmt::format("PPXFUSE_SEED='{}' does not fit in 64 bits", env));
    }
  }
  return std::nullopt;
}

void log_config(const GlobalOptions& g, std::string_view command, const nlohmann::ordered_json& config) {
  if (g.quiet) return;
  std::cerr << "ppxfuse " << command << ": config " << config.dump() << '\n';
}

void log_line(const GlobalOptions& g, const std::string& line) {
  if (!g.quiet) std::cerr << line << '\n';
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    io::write_text(*path, content);
  } else {
    std::cout << content;
  }
}

std::vector<LogitBundle> load_bundles(const std::vector<std::string>& specs, const LabelSpace& labels) {
  std::vector<LogitBundle> bundles;
  for (const auto& spec : specs) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
      throw UsageError(fmt::format("--logits expects MANIFEST,ROWS, got '{}'", spec));
    }
    bundles.push_back(io::read_logits(spec.substr(0, comma), spec.substr(comma + 1)));
    if (bundles.back().label_space() != labels) {
      throw SchemaError(fmt::format("model '{}' label order does not match --labels", bundles.back().model_name()));
    }
  }
  return bundles;
}

AlignedMatrices load_aligned(const GlobalOptions& g, const std::vector<std::string>& specs, const LabelSpace& labels) {
  const auto bundles = load_bundles(specs, labels);
  AlignedMatrices aligned = aligned_probabilities(bundles);
  if (!aligned.dropped_ids.empty()) {
    log_line(g, fmt::format("alignment dropped {} id(s) not present in every bundle", aligned.dropped_ids.size()));
  }
  return aligned;
}

GoldLabels load_gold(const std::string& path, const LabelSpace& labels) {
  const auto corpus = io::read_corpus(path, labels);
  return gold_labels(corpus);
}

// --- subcommands ------------------------------------------------------------

struct PerplexityArgs {
  std::vector<std::string> logits;
  std::string gold;
  std::optional<std::string> out;
  std::optional<std::string> weights_out;
};

void run_perplexity(const GlobalOptions& g, const PerplexityArgs& a) {
  const LabelSpace labels(g.labels);
  log_config(g, "perplexity",
             {{"logits", a.logits}, {"gold", a.gold}, {"out", a.out.value_or("-")}, {"labels", g.labels},
              {"weights_out", a.weights_out.value_or("")}});
  const auto aligned = load_aligned(g, a.logits, labels);
  const GoldLabels gold = load_gold(a.gold, labels);
  const auto reports = perplexity_reports(aligned.matrices, gold);
  emit(a.out, io::format_perplexity_reports(reports));
  if (a.weights_out) io::write_weights(inverse_perplexity_weights(reports), *a.weights_out);
  for (const auto& r : reports) {
    log_line(g, fmt::format("{}: perplexity {:.6f} over {} examples", r.model_name, r.perplexity, r.n_examples));
  }
}

struct FuseArgs {
  std::vector<std::string> logits;
  std::optional<std::string> weights;
  std::string strategy = "ppx";
  std::optional<std::string> calibration;
  std::string out;
  std::optional<std::string> weights_out;
};

void run_fuse(const GlobalOptions& g, const FuseArgs& a) {
  const LabelSpace labels(g.labels);
  const FuseStrategy strategy = parse_fuse_strategy(a.strategy);
  const bool weighted = strategy == FuseStrategy::ppx || strategy == FuseStrategy::acc;
  if (weighted && !a.weights && !a.calibration) {
    throw UsageError(fmt::format("--strategy {} needs --calibration or --weights", a.strategy));
  }
  if (!weighted && a.weights) throw UsageError(fmt::format("--weights cannot be combined with --strategy {}", a.strategy));

  const std::string weights_out = a.weights_out.value_or(a.out + ".weights.json");
  log_config(g, "fuse",
             {{"logits", a.logits}, {"strategy", a.strategy}, {"weights", a.weights.value_or("")},
              {"calibration", a.calibration.value_or("")}, {"out", a.out}, {"labels", g.labels},
              {"weights_out", weighted && !a.weights ? weights_out : ""}});

  const auto aligned = load_aligned(g, a.logits, labels);
  std::optional<WeightVector> weights;
  if (a.weights) {
    weights = io::read_weights(*a.weights);
  } else if (weighted) {
    weights = calibrate(aligned.matrices, load_gold(*a.calibration, labels), strategy);
    io::write_weights(*weights, weights_out);
  }
  const FusionResult result = fuse(aligned.matrices, strategy, weights);
  io::write_predictions(result, a.out);
  std::cout << fmt::format("fused {} examples from {} models with strategy {} -> {}\n", result.rows.size(),
                           aligned.matrices.size(), a.strategy, a.out);
}

struct CompareArgs {
  std::vector<std::string> logits;
  std::string calibration;
  std::string gold;
  std::string out;
};

void run_compare(const GlobalOptions& g, const CompareArgs& a) {
  const LabelSpace labels(g.labels);
  log_config(g, "compare",
             {{"logits", a.logits}, {"calibration", a.calibration}, {"gold", a.gold}, {"out", a.out},
              {"labels", g.labels}});
  const auto aligned = load_aligned(g, a.logits, labels);
  const Comparison comparison =
      compare_strategies(aligned.matrices, load_gold(a.calibration, labels), load_gold(a.gold, labels));
  io::write_text(a.out, format_comparison_json(comparison));
  if (!g.quiet) std::cout << format_comparison_table(comparison);
}

struct BalanceArgs {
  std::string corpus;
  std::optional<std::string> config;
  std::string out;
};

void run_balance(const GlobalOptions& g, const BalanceArgs& a) {
  const LabelSpace labels(g.labels);
  BalancePlan plan = a.config ? io::read_balance_plan(*a.config) : BalancePlan::defaults();
  if (auto seed = resolve_seed(g)) plan.seed = *seed;
  log_config(g, "balance",
             {{"corpus", a.corpus}, {"config", a.config.value_or("<default>")}, {"caps", plan.caps},
              {"seed", plan.seed}, {"out", a.out}});

  const auto corpus = io::read_corpus(a.corpus, labels);
  const BalanceResult result = balance(corpus, plan);
  io::write_corpus(a.out, result.records, labels);
  std::string summary;
  for (const auto& [lang, count] : result.counts) {
    if (!plan.caps.contains(lang)) log_line(g, fmt::format("language '{}' has no cap; kept all {}", lang, count.before));
    summary += fmt::format("{}{} {}->{}", summary.empty() ? "" : ", ", lang, count.before, count.after);
  }
  std::cout << fmt::format("balanced {} -> {} records ({})\n", corpus.size(), result.records.size(), summary);
}

struct BatchPlanArgs {
  std::string corpus;
  std::size_t batch_size = 16;
  std::string out;
};

void run_batch_plan(const GlobalOptions& g, const BatchPlanArgs& a) {
  const LabelSpace labels(g.labels);
  const std::uint64_t seed = resolve_seed(g).value_or(kDefaultSeed);
  log_config(g, "batch-plan", {{"corpus", a.corpus}, {"batch_size", a.batch_size}, {"seed", seed}, {"out", a.out}});
  const auto corpus = io::read_corpus(a.corpus, labels);
  const BatchPlan plan = plan_batches(corpus, a.batch_size);
  const BatchPlan baseline = plan_batches_shuffled(corpus, a.batch_size, seed);
  io::write_text(a.out, io::format_batch_plan(plan));
  std::cout << fmt::format("{} batches of <= {}; padding waste {:.4f} sorted vs {:.4f} shuffled\n", plan.batches.size(),
                           a.batch_size, plan.padding_waste, baseline.padding_waste);
}

struct EvaluateArgs {
  std::string predictions;
  std::string gold;
  std::string out;
};

void run_evaluate(const GlobalOptions& g, const EvaluateArgs& a) {
  const LabelSpace labels(g.labels);
  log_config(g, "evaluate", {{"predictions", a.predictions}, {"gold", a.gold}, {"out", a.out}, {"labels", g.labels}});
  const FusionResult predictions = io::read_predictions(a.predictions, labels);
  const EvaluationReport report = evaluate(predictions, load_gold(a.gold, labels));
  io::write_text(a.out, io::format_evaluation(report));
  if (!g.quiet) std::cout << io::format_evaluation_table(report, to_string(predictions.strategy));
  std::cout << fmt::format("evaluated {} predictions: macro_f1 {:.4f} micro_f1 {:.4f}\n", report.n_examples,
                           report.macro_f1, report.micro_f1);
}

struct SimulateArgs {
  std::string spec;
  std::string out_dir;
  double calibration_fraction = 0.5;
};

void run_simulate(const GlobalOptions& g, const SimulateArgs& a) {
  SimulationConfig config = io::read_simulation_config(a.spec);
  if (auto seed = resolve_seed(g)) config.seed = *seed;
  static const std::regex safe_name("[A-Za-z0-9_.-]+");
  for (const auto& m : config.models) {
    if (!std::regex_match(m.name, safe_name)) {
      throw ConfigError(fmt::format("model name '{}' is not usable as a file name", m.name));
    }
  }
  nlohmann::ordered_json models = nlohmann::ordered_json::array();
  for (const auto& m : config.models) {
    models.push_back({{"name", m.name}, {"accuracy", m.accuracy}, {"sharpness", m.sharpness},
                      {"miscalibration", m.miscalibration}});
  }
  log_config(g, "simulate",
             {{"spec", a.spec}, {"models", models}, {"n", config.n_examples}, {"prior", config.prior},
              {"seed", config.seed}, {"calibration_fraction", a.calibration_fraction}, {"out_dir", a.out_dir}});

  const SimulationResult sim = simulate(config);
  const auto [calibration, test] = split_head(sim.gold, a.calibration_fraction);
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  io::write_corpus(dir / "gold.jsonl", sim.gold, sim.label_space);
  io::write_corpus(dir / "calibration.jsonl", calibration, sim.label_space);
  io::write_corpus(dir / "test.jsonl", test, sim.label_space);
  for (const auto& bundle : sim.bundles) {
    io::write_logits(bundle, dir / (bundle.model_name() + ".manifest.json"), dir / (bundle.model_name() + ".logits.jsonl"),
                     "synthetic:" + bundle.model_name());
  }
  std::cout << fmt::format("simulated {} examples for {} models (seed {}) into {}\n", config.n_examples,
                           config.models.size(), config.seed, a.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ppxfuse: inverse-perplexity ensemble fusion toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  std::uint64_t seed_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "Random seed (overrides PPXFUSE_SEED)");
  app.add_option("--labels", global.labels, "Ordered class names")->delimiter(',')->capture_default_str();
  app.add_flag("--quiet", global.quiet, "Suppress configuration logging and tables");

  PerplexityArgs perplexity_args;
  auto* perplexity_cmd = app.add_subcommand("perplexity", "Per-model perplexity on a labeled corpus");
  perplexity_cmd->add_option("--logits", perplexity_args.logits, "MANIFEST,ROWS (repeatable)")->required();
  perplexity_cmd->add_option("--gold", perplexity_args.gold, "Labeled corpus covering every aligned id")->required();
  perplexity_cmd->add_option("--out", perplexity_args.out, "Report JSONL path (default stdout)");
  perplexity_cmd->add_option("--weights-out", perplexity_args.weights_out, "Also write inverse-perplexity weights");

  FuseArgs fuse_args;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse aligned bundles into predictions");
  fuse_cmd->add_option("--logits", fuse_args.logits, "MANIFEST,ROWS (repeatable)")->required();
  auto* weights_opt = fuse_cmd->add_option("--weights", fuse_args.weights, "Precomputed weights JSON");
  fuse_cmd->add_option("--strategy", fuse_args.strategy, "ppx | acc | mean | majority")
      ->check(CLI::IsMember({"ppx", "acc", "mean", "majority"}))
      ->capture_default_str();
  auto* calibration_opt =
      fuse_cmd->add_option("--calibration", fuse_args.calibration, "Labeled calibration corpus for ppx/acc");
  weights_opt->excludes(calibration_opt);
  fuse_cmd->add_option("--out", fuse_args.out, "Predictions JSONL path")->required();
  fuse_cmd->add_option("--weights-out", fuse_args.weights_out, "Where computed weights go (default OUT.weights.json)");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Score all ensemble strategies side by side");
  compare_cmd->add_option("--logits", compare_args.logits, "MANIFEST,ROWS (repeatable)")->required();
  compare_cmd->add_option("--calibration", compare_args.calibration, "Labeled calibration corpus")->required();
  compare_cmd->add_option("--gold", compare_args.gold, "Labeled evaluation corpus")->required();
  compare_cmd->add_option("--out", compare_args.out, "Comparison JSON path")->required();

  BalanceArgs balance_args;
  auto* balance_cmd = app.add_subcommand("balance", "Downsample over-represented languages");
  balance_cmd->add_option("--corpus", balance_args.corpus, "Input corpus JSONL")->required();
  balance_cmd->add_option("--config", balance_args.config, "Balance plan JSON (default en 40000, zh 20000)");
  balance_cmd->add_option("--out", balance_args.out, "Output corpus JSONL")->required();

  BatchPlanArgs batch_args;
  auto* batch_cmd = app.add_subcommand("batch-plan", "Length-sorted batch plan");
  batch_cmd->add_option("--corpus", batch_args.corpus, "Input corpus JSONL")->required();
  batch_cmd->add_option("--batch-size", batch_args.batch_size, "Records per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  batch_cmd->add_option("--out", batch_args.out, "Batch plan JSONL")->required();

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Macro/micro F1 of a predictions file");
  evaluate_cmd->add_option("--predictions", evaluate_args.predictions, "Predictions JSONL")->required();
  evaluate_cmd->add_option("--gold", evaluate_args.gold, "Labeled corpus")->required();
  evaluate_cmd->add_option("--out", evaluate_args.out, "Evaluation report JSON")->required();

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate synthetic logit bundles and gold labels");
  simulate_cmd->add_option("--spec", simulate_args.spec, "Simulation spec JSON")->required();
  simulate_cmd->add_option("--out-dir", simulate_args.out_dir, "Output directory")->required();
  simulate_cmd->add_option("--calibration-fraction", simulate_args.calibration_fraction,
                           "Leading share of ids written to calibration.jsonl")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (seed_opt->count() > 0) global.seed = seed_flag;

  try {
    if (*perplexity_cmd) run_perplexity(global, perplexity_args);
    if (*fuse_cmd) run_fuse(global, fuse_args);
    if (*compare_cmd) run_compare(global, compare_args);
    if (*balance_cmd) run_balance(global, balance_args);
    if (*batch_cmd) run_batch_plan(global, batch_args);
    if (*evaluate_cmd) run_evaluate(global, evaluate_args);
    if (*simulate_cmd) run_simulate(global, simulate_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
