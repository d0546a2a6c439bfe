#include "ppxfuse/dataset_prep.hpp"

#include <algorithm>
#include <numeric>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <fmt/format.h>

#include "ppxfuse/errors.hpp"

namespace ppxfuse {

BalancePlan BalancePlan::defaults() {
  BalancePlan plan;
  plan.caps = {{"en", 40000}, {"zh", 20000}};
  plan.seed = kDefaultSeed;
  return plan;
}

namespace {

bool by_id(const CorpusRecord& a, const CorpusRecord& b) { return a.id < b.id; }

// Seeded random permutation of `items` (Fisher-Yates). boost's distributions
// are used instead of <random> ones because their output is fixed across
// standard library implementations.
template <typename T>
void seeded_shuffle(std::vector<T>& items, boost::random::mt19937_64& rng, std::size_t prefix) {
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < prefix && i + 1 < n; ++i) {
    boost::random::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(items[i], items[pick(rng)]);
  }
}

}  // namespace

BalanceResult balance(std::span<const CorpusRecord> corpus, const BalancePlan& plan) {
  for (const auto& [lang, cap] : plan.caps) {
    if (cap <= 0) throw ConfigError(fmt::format("cap for language '{}' must be >= 1, got {}", lang, cap));
  }

  std::map<std::string, std::vector<const CorpusRecord*>> by_language;
  for (const auto& record : corpus) by_language[record.language].push_back(&record);

  boost::random::mt19937_64 rng(plan.seed);
  BalanceResult result;
  for (auto& [lang, records] : by_language) {
    std::sort(records.begin(), records.end(), [](const auto* a, const auto* b) { return by_id(*a, *b); });
    LanguageCount& count = result.counts[lang];
    count.before = records.size();
    auto cap = plan.caps.find(lang);
    if (cap != plan.caps.end() && records.size() > static_cast<std::size_t>(cap->second)) {
      const auto keep = static_cast<std::size_t>(cap->second);
      seeded_shuffle(records, rng, keep);
      records.resize(keep);
      count.capped = true;
    }
    count.after = records.size();
    for (const auto* r : records) result.records.push_back(*r);
  }
  std::sort(result.records.begin(), result.records.end(), by_id);
  return result;
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char ch : text) {
    const bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v';
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

double padding_waste(std::span<const std::size_t> lengths, std::size_t batch_size) {
  if (batch_size == 0) throw DomainError("batch size must be >= 1");
  std::size_t padded = 0;
  std::size_t total = 0;
  for (std::size_t start = 0; start < lengths.size(); start += batch_size) {
    const auto batch = lengths.subspan(start, std::min(batch_size, lengths.size() - start));
    const std::size_t longest = *std::max_element(batch.begin(), batch.end());
    for (std::size_t len : batch) padded += longest - len;
    total += longest * batch.size();
  }
  return total == 0 ? 0.0 : static_cast<double>(padded) / static_cast<double>(total);
}

namespace {

struct Sized {
  std::size_t length;
  const std::string* id;
};

bool longer_first(const Sized& a, const Sized& b) {
  if (a.length != b.length) return a.length > b.length;
  return *a.id < *b.id;
}

BatchPlan chunk(const std::vector<Sized>& ordered, std::size_t batch_size) {
  BatchPlan plan;
  plan.batch_size = batch_size;
  std::vector<std::size_t> lengths;
  lengths.reserve(ordered.size());
  for (std::size_t start = 0; start < ordered.size(); start += batch_size) {
    const std::size_t end = std::min(start + batch_size, ordered.size());
    std::vector<Sized> batch(ordered.begin() + static_cast<std::ptrdiff_t>(start),
                             ordered.begin() + static_cast<std::ptrdiff_t>(end));
    std::stable_sort(batch.begin(), batch.end(), longer_first);
    auto& ids = plan.batches.emplace_back();
    for (const auto& s : batch) {
      ids.push_back(*s.id);
      lengths.push_back(s.length);
    }
  }
  plan.padding_waste = padding_waste(lengths, batch_size);
  return plan;
}

std::vector<Sized> measure(std::span<const CorpusRecord> corpus, std::size_t batch_size) {
  if (corpus.empty()) throw DomainError("cannot plan batches for an empty corpus");
  if (batch_size == 0) throw DomainError("batch size must be >= 1");
  std::vector<Sized> sized;
  sized.reserve(corpus.size());
  for (const auto& r : corpus) sized.push_back({word_count(r.text), &r.id});
  return sized;
}

}  // namespace

BatchPlan plan_batches(std::span<const CorpusRecord> corpus, std::size_t batch_size) {
  auto sized = measure(corpus, batch_size);
  std::sort(sized.begin(), sized.end(), longer_first);
  return chunk(sized, batch_size);
}

BatchPlan plan_batches_shuffled(std::span<const CorpusRecord> corpus, std::size_t batch_size, std::uint64_t seed) {
  auto sized = measure(corpus, batch_size);
  std::sort(sized.begin(), sized.end(), [](const Sized& a, const Sized& b) { return *a.id < *b.id; });
  boost::random::mt19937_64 rng(seed);
  seeded_shuffle(sized, rng, sized.size());
  return chunk(sized, batch_size);
}

}  // namespace ppxfuse
