#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ppxfuse/types.hpp"

namespace ppxfuse {

// A synthetic classifier. Per example it draws a confidence c for its
// predicted class from a Beta distribution whose mean is set by `accuracy`
// and whose concentration is `sharpness`, then is correct with probability c
// (so its confidences are calibrated). On wrong answers the log-probabilities
// are multiplied by (1 + miscalibration), making it overconfident exactly
// when it errs.
struct SyntheticModelSpec {
  std::string name;
  double accuracy = 0.9;  // in [1/C, 1]
  double sharpness = 4.0;  // > 0; larger means confidences cluster tighter
  double miscalibration = 0.0;  // >= 0

  bool operator==(const SyntheticModelSpec&) const = default;
};

struct SimulationConfig {
  std::vector<SyntheticModelSpec> models;
  std::size_t n_examples = 10000;
  std::vector<double> prior{0.5, 0.5};
  std::uint64_t seed = 42;
};

struct SimulationResult {
  LabelSpace label_space;
  std::vector<CorpusRecord> gold;  // labeled, sorted by id
  std::vector<LogitBundle> bundles;  // one per spec, rows in gold order
};

// Label space used for a prior of the given size: {human, machine} for two
// classes, class0..class{C-1} otherwise.
LabelSpace simulation_labels(std::size_t n_classes);

// Deterministic for a given config. Throws ConfigError on out-of-range specs,
// n_examples == 0, or a prior that is not a distribution.
SimulationResult simulate(const SimulationConfig& config);

// Splits a corpus (kept in its given order) into the first
// floor(n * fraction) records and the rest.
std::pair<std::vector<CorpusRecord>, std::vector<CorpusRecord>> split_head(std::span<const CorpusRecord> corpus,
                                                                            double fraction);

}  // namespace ppxfuse
