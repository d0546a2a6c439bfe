#pragma once

// Synthetic corpora shared by the unit tests and the acceptance binary.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <boost/random/lognormal_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <fmt/format.h>

#include "ppxfuse/compare.hpp"
#include "ppxfuse/simulate.hpp"
#include "ppxfuse/types.hpp"

namespace fixtures {

// One record per requested language count, ids "<lang>-<index>".
inline std::vector<ppxfuse::CorpusRecord> corpus_with_counts(const std::map<std::string, std::size_t>& counts) {
  std::vector<ppxfuse::CorpusRecord> corpus;
  for (const auto& [lang, n] : counts) {
    for (std::size_t i = 0; i < n; ++i) {
      corpus.push_back({fmt::format("{}-{:07}", lang, i), "x", lang, "fixture", "", "", std::size_t{i % 2}});
    }
  }
  return corpus;
}

// Texts of "w w w ..." with log-normally distributed word counts (at least 1).
inline std::vector<ppxfuse::CorpusRecord> lognormal_corpus(std::size_t n, std::uint64_t seed, double mu = 4.0,
                                                           double sigma = 0.8) {
  boost::random::mt19937_64 rng(seed);
  boost::random::lognormal_distribution<double> length(mu, sigma);
  std::vector<ppxfuse::CorpusRecord> corpus;
  corpus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto words = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(length(rng))));
    std::string text;
    text.reserve(words * 2);
    for (std::size_t w = 0; w < words; ++w) text += w == 0 ? "w" : " w";
    corpus.push_back({fmt::format("doc-{:06}", i), std::move(text), "en", "fixture", "", "", std::nullopt});
  }
  return corpus;
}

// One calibrated model at accuracy 0.9 and two overconfident models at 0.6.
inline ppxfuse::SimulationConfig ordering_config(std::uint64_t seed = 7, std::size_t n = 10000) {
  ppxfuse::SimulationConfig config;
  config.models = {{"A", 0.9, 4.0, 0.0}, {"B", 0.6, 4.0, 2.0}, {"C", 0.6, 4.0, 2.0}};
  config.n_examples = n;
  config.seed = seed;
  return config;
}

// Simulates `config`, calibrates on the first half of the examples and scores
// every strategy on the second half.
inline ppxfuse::Comparison run_comparison(const ppxfuse::SimulationConfig& config) {
  const auto sim = ppxfuse::simulate(config);
  const auto [calibration, evaluation] = ppxfuse::split_head(sim.gold, 0.5);
  const auto aligned = ppxfuse::aligned_probabilities(sim.bundles);
  return ppxfuse::compare_strategies(aligned.matrices, ppxfuse::gold_labels(calibration),
                                     ppxfuse::gold_labels(evaluation));
}

}  // namespace fixtures
