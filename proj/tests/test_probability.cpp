#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ppxfuse/errors.hpp"
#include "ppxfuse/probability.hpp"

using namespace ppxfuse;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

namespace {

// 50-digit reference: exp(-(1/N) sum log clamp(p_gold)).
double oracle_perplexity(const ProbabilityMatrix& probs, const GoldLabels& gold) {
  BigFloat sum = 0;
  for (const auto& row : probs.rows()) {
    const double p = std::clamp(row.probabilities[gold.at(row.id)], kProbabilityFloor, 1.0);
    sum += boost::multiprecision::log(BigFloat(p));
  }
  return static_cast<double>(boost::multiprecision::exp(-sum / BigFloat(probs.size())));
}

ProbabilityMatrix binary_gold_matrix(const std::vector<double>& gold_probs, GoldLabels& gold) {
  std::vector<ProbabilityRow> rows;
  for (std::size_t i = 0; i < gold_probs.size(); ++i) {
    const std::string id = "r" + std::to_string(i);
    rows.push_back({id, {1.0 - gold_probs[i], gold_probs[i]}});
    gold[id] = 1;
  }
  return ProbabilityMatrix("m", LabelSpace::binary(), std::move(rows));
}

}  // namespace

TEST_CASE("softmax examples") {
  const std::vector<double> zeros{0.0, 0.0};
  const auto half = softmax(zeros);
  CHECK(half[0] == 0.5);
  CHECK(half[1] == 0.5);

  const std::vector<double> three_to_one{std::log(3.0), 0.0};
  const auto p = softmax(three_to_one);
  CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("softmax is shift invariant and stable for huge logits") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> logit(-20.0, 20.0);
  std::uniform_real_distribution<double> shift(-1e3, 1e3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(2 + trial % 4);
    for (double& v : x) v = logit(rng);
    const double k = shift(rng);
    std::vector<double> y = x;
    for (double& v : y) v += k;
    const auto px = softmax(x);
    const auto py = softmax(y);
    double sum = 0.0;
    for (std::size_t i = 0; i < px.size(); ++i) {
      CHECK(py[i] == doctest::Approx(px[i]).epsilon(1e-9));
      sum += px[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
  const std::vector<double> huge{1000.0, 999.0};
  const auto p = softmax(huge);
  CHECK(std::isfinite(p[0]));
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
}

TEST_CASE("softmax rejects non-finite input and single logits") {
  const std::vector<double> bad{1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(softmax(bad), DomainError);
  const std::vector<double> nan{std::nan(""), 0.0};
  CHECK_THROWS_AS(softmax(nan), DomainError);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(softmax(one), DomainError);
}

TEST_CASE("perplexity examples") {
  GoldLabels gold;
  SUBCASE("perfect confidence gives 1") {
    const auto report = perplexity(binary_gold_matrix({1.0, 1.0, 1.0}, gold), gold);
    CHECK(report.perplexity == 1.0);
    CHECK(report.mean_nll == 0.0);
    CHECK_FALSE(std::signbit(report.mean_nll));
    CHECK(report.n_examples == 3);
  }
  SUBCASE("uniform binary gives 2") {
    const auto report = perplexity(binary_gold_matrix({0.5, 0.5, 0.5, 0.5}, gold), gold);
    CHECK(report.perplexity == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("gold probabilities 0.9, 0.8, 0.6") {
    // 50-digit reference for exp(-(ln 0.9 + ln 0.8 + ln 0.6) / 3), computed
    // with mpmath from the binary double inputs.
    const double reference = 1.3228342099734995;
    const auto report = perplexity(binary_gold_matrix({0.9, 0.8, 0.6}, gold), gold);
    CHECK(report.perplexity == doctest::Approx(reference).epsilon(1e-12));
    CHECK(report.perplexity == doctest::Approx(std::exp(report.mean_nll)).epsilon(1e-12));
  }
  SUBCASE("zero gold probability is clamped, not infinite") {
    const auto report = perplexity(binary_gold_matrix({0.0}, gold), gold);
    CHECK(report.perplexity == doctest::Approx(1e12).epsilon(1e-9));
  }
}

TEST_CASE("perplexity errors") {
  GoldLabels gold;
  const auto probs = binary_gold_matrix({0.7, 0.4}, gold);
  GoldLabels partial{{"r0", 1}};
  CHECK_THROWS_AS(perplexity(probs, partial), CoverageError);
  const ProbabilityMatrix empty("m", LabelSpace::binary(), {});
  CHECK_THROWS_AS(perplexity(empty, gold), DomainError);
}

TEST_CASE("perplexity agrees with a 50-digit oracle on random instances") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> n_dist(1, 100);
  std::uniform_int_distribution<int> c_dist(2, 5);
  std::uniform_real_distribution<double> logit(-8.0, 8.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = n_dist(rng);
    const int c = c_dist(rng);
    std::vector<std::string> names;
    for (int k = 0; k < c; ++k) names.push_back("c" + std::to_string(k));
    std::vector<LogitRow> rows;
    GoldLabels gold;
    for (int i = 0; i < n; ++i) {
      std::vector<double> l(c);
      for (double& v : l) v = logit(rng);
      rows.push_back({"x" + std::to_string(i), l});
      gold["x" + std::to_string(i)] = static_cast<std::size_t>(rng() % c);
    }
    const auto probs = to_probabilities(LogitBundle("m", LabelSpace(names), rows));
    const double expected = oracle_perplexity(probs, gold);
    CHECK(perplexity(probs, gold).perplexity == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("perplexity properties") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> gp(1 + trial % 40);
    for (double& p : gp) p = unit(rng);
    GoldLabels gold;
    const auto probs = binary_gold_matrix(gp, gold);
    const double base = perplexity(probs, gold).perplexity;
    CHECK(base >= 1.0);

    // permutation invariance, bit-exact
    auto rows = probs.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    CHECK(perplexity(ProbabilityMatrix("m", probs.label_space(), rows), gold).perplexity == base);

    // monotonicity: lowering one gold probability raises P
    auto lowered = probs.rows();
    const std::size_t k = rng() % lowered.size();
    lowered[k].probabilities = {1.0 - gp[k] * 0.5, gp[k] * 0.5};
    CHECK(perplexity(ProbabilityMatrix("m", probs.label_space(), lowered), gold).perplexity > base);

    // via logits: log p fed back through softmax reproduces the same P
    std::vector<LogitRow> logit_rows;
    for (const auto& row : probs.rows()) {
      logit_rows.push_back({row.id, {std::log(row.probabilities[0]), std::log(row.probabilities[1])}});
    }
    const auto via_logits = to_probabilities(LogitBundle("m", probs.label_space(), logit_rows));
    CHECK(perplexity(via_logits, gold).perplexity == doctest::Approx(base).epsilon(1e-12));
  }
}
