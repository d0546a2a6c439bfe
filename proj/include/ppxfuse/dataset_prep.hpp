#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppxfuse/types.hpp"

namespace ppxfuse {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Per-language sample caps; languages without a cap pass through untouched.
struct BalancePlan {
  std::map<std::string, std::int64_t> caps;
  std::uint64_t seed = kDefaultSeed;

  // en -> 40,000 and zh -> 20,000, seed 42.
  static BalancePlan defaults();
};

struct LanguageCount {
  std::size_t before = 0;
  std::size_t after = 0;
  bool capped = false;
};

struct BalanceResult {
  std::vector<CorpusRecord> records;  // sorted by id
  std::map<std::string, LanguageCount> counts;
};

// For every language whose count exceeds its cap, keeps a uniform random
// subset of exactly `cap` records drawn with the plan's seed. Throws
// ConfigError on a cap <= 0.
BalanceResult balance(std::span<const CorpusRecord> corpus, const BalancePlan& plan);

enum class LengthMetric { whitespace_words };

struct BatchPlan {
  std::size_t batch_size = 1;
  std::vector<std::vector<std::string>> batches;
  LengthMetric length_metric = LengthMetric::whitespace_words;
  double padding_waste = 0.0;
};

// Number of whitespace-delimited words.
std::size_t word_count(std::string_view text);

// Fraction of padded positions:
//   sum_b sum_r (max_b - len_r) / sum_b (max_b * |b|)
// for consecutive chunks of `lengths` of size `batch_size`. 0 when every
// length is 0.
double padding_waste(std::span<const std::size_t> lengths, std::size_t batch_size);

// Sorts by word count descending (ties by id), then chunks into batches.
// Throws DomainError on an empty corpus or batch_size 0.
BatchPlan plan_batches(std::span<const CorpusRecord> corpus, std::size_t batch_size);

// Baseline without length sorting: records in a seeded random order, chunked
// the same way. Ids inside each batch are still listed longest first.
BatchPlan plan_batches_shuffled(std::span<const CorpusRecord> corpus, std::size_t batch_size, std::uint64_t seed);

}  // namespace ppxfuse
