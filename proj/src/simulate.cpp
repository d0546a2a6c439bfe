#include "ppxfuse/simulate.hpp"

#include <algorithm>
#include <cmath>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

namespace {

constexpr double kMaxConfidenceGap = 1e-12;

void validate(const SimulationConfig& config) {
  if (config.models.empty()) throw ConfigError("simulation needs at least one model");
  if (config.n_examples == 0) throw ConfigError("simulation needs n >= 1");
  if (config.prior.size() < 2) throw ConfigError("prior needs at least 2 classes");
  double sum = 0.0;
  for (double p : config.prior) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("prior entry {} outside [0, 1]", p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError(fmt::format("prior sums to {}, expected 1", sum));

  const double chance = 1.0 / static_cast<double>(config.prior.size());
  for (const auto& m : config.models) {
    if (m.name.empty()) throw ConfigError("synthetic model with empty name");
    if (!(m.accuracy >= chance && m.accuracy <= 1.0)) {
      throw ConfigError(fmt::format("model '{}': accuracy {} outside [{}, 1]", m.name, m.accuracy, chance));
    }
    if (!(m.sharpness > 0.0) || !std::isfinite(m.sharpness)) {
      throw ConfigError(fmt::format("model '{}': sharpness must be > 0", m.name));
    }
    if (!(m.miscalibration >= 0.0) || !std::isfinite(m.miscalibration)) {
      throw ConfigError(fmt::format("model '{}': miscalibration must be >= 0", m.name));
    }
  }
}

class ModelSampler {
 public:
  ModelSampler(const SyntheticModelSpec& spec, std::size_t n_classes)
      : spec_(spec), n_classes_(n_classes), chance_(1.0 / static_cast<double>(n_classes)) {
    // mean of the Beta draw that maps to an expected confidence == accuracy
    mean_ = (spec.accuracy - chance_) / (1.0 - chance_);
  }

  std::vector<double> draw(std::size_t gold, boost::random::mt19937_64& rng) const {
    double b = mean_;
    if (mean_ > 0.0 && mean_ < 1.0) {
      boost::random::beta_distribution<double> beta(spec_.sharpness * mean_, spec_.sharpness * (1.0 - mean_));
      b = beta(rng);
    }
    b = std::clamp(b, 0.0, 1.0 - kMaxConfidenceGap);
    const double confidence = chance_ + (1.0 - chance_) * b;

    boost::random::bernoulli_distribution<double> hit(confidence);
    const bool correct = hit(rng);
    std::size_t predicted = gold;
    if (!correct) {
      boost::random::uniform_int_distribution<std::size_t> other(0, n_classes_ - 2);
      predicted = other(rng);
      if (predicted >= gold) ++predicted;
    }

    const double scale = correct ? 1.0 : 1.0 + spec_.miscalibration;
    const double rest = std::log((1.0 - confidence) / static_cast<double>(n_classes_ - 1)) * scale;
    std::vector<double> logits(n_classes_, rest);
    logits[predicted] = std::log(confidence) * scale;
    return logits;
  }

 private:
  SyntheticModelSpec spec_;
  std::size_t n_classes_;
  double chance_;
  double mean_ = 0.0;
};

}  // namespace

LabelSpace simulation_labels(std::size_t n_classes) {
  if (n_classes == 2) return LabelSpace::binary();
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < n_classes; ++c) labels.push_back(fmt::format("class{}", c));
  return LabelSpace(std::move(labels));
}

SimulationResult simulate(const SimulationConfig& config) {
  validate(config);
  const std::size_t n_classes = config.prior.size();
  SimulationResult result{simulation_labels(n_classes), {}, {}};

  std::vector<ModelSampler> samplers;
  for (const auto& spec : config.models) samplers.emplace_back(spec, n_classes);
  std::vector<std::vector<LogitRow>> rows(config.models.size());
  for (auto& r : rows) r.reserve(config.n_examples);
  result.gold.reserve(config.n_examples);

  const int width = static_cast<int>(fmt::format("{}", config.n_examples - 1).size());
  boost::random::mt19937_64 rng(config.seed);
  boost::random::discrete_distribution<std::size_t, double> prior(config.prior.begin(), config.prior.end());

  for (std::size_t i = 0; i < config.n_examples; ++i) {
    CorpusRecord record;
    record.id = fmt::format("sim-{:0{}}", i, width);
    record.language = "en";
    record.source = "synthetic";
    const std::size_t gold = prior(rng);
    record.label = gold;
    for (std::size_t m = 0; m < samplers.size(); ++m) rows[m].push_back({record.id, samplers[m].draw(gold, rng)});
    result.gold.push_back(std::move(record));
  }

  for (std::size_t m = 0; m < config.models.size(); ++m) {
    result.bundles.emplace_back(config.models[m].name, result.label_space, std::move(rows[m]));
  }
  return result;
}

std::pair<std::vector<CorpusRecord>, std::vector<CorpusRecord>> split_head(std::span<const CorpusRecord> corpus,
                                                                            double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError(fmt::format("split fraction {} outside [0, 1]", fraction));
  const auto head = static_cast<std::size_t>(std::floor(static_cast<double>(corpus.size()) * fraction));
  return {{corpus.begin(), corpus.begin() + static_cast<std::ptrdiff_t>(head)},
          {corpus.begin() + static_cast<std::ptrdiff_t>(head), corpus.end()}};
}

}  // namespace ppxfuse
