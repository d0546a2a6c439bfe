#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance binary. None of these call into the library's arithmetic.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ppxfuse/probability.hpp"

namespace oracle {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// exp(-(1/N) sum log clamp(p_gold)) in 50 significant digits.
inline double perplexity(const ppxfuse::ProbabilityMatrix& probs, const ppxfuse::GoldLabels& gold) {
  BigFloat sum = 0;
  for (const auto& row : probs.rows()) {
    const double p = std::clamp(row.probabilities[gold.at(row.id)], ppxfuse::kProbabilityFloor, 1.0);
    sum += boost::multiprecision::log(BigFloat(p));
  }
  return static_cast<double>(boost::multiprecision::exp(-sum / BigFloat(probs.size())));
}

struct F1Scores {
  double macro = 0.0;
  double micro = 0.0;
  double accuracy = 0.0;
};

// F1 per class as 2TP / (2TP + FP + FN), 0 when the denominator is 0;
// micro F1 from TP, FP, FN pooled over classes.
inline F1Scores f1_scores(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& predicted,
                          std::size_t n_classes) {
  std::size_t tp_all = 0;
  std::size_t fp_all = 0;
  std::size_t fn_all = 0;
  double macro = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (predicted[i] == c && gold[i] == c) ++tp;
      if (predicted[i] == c && gold[i] != c) ++fp;
      if (predicted[i] != c && gold[i] == c) ++fn;
    }
    const std::size_t den = 2 * tp + fp + fn;
    macro += den == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(den);
    tp_all += tp;
    fp_all += fp;
    fn_all += fn;
  }
  F1Scores out;
  out.macro = macro / static_cast<double>(n_classes);
  const std::size_t den = 2 * tp_all + fp_all + fn_all;
  out.micro = den == 0 ? 0.0 : static_cast<double>(2 * tp_all) / static_cast<double>(den);
  out.accuracy = static_cast<double>(tp_all) / static_cast<double>(gold.size());
  return out;
}

// Per-language training counts before balancing and the expected counts after
// applying the default caps.
inline const std::map<std::string, std::size_t>& corpus_counts_before() {
  static const std::map<std::string, std::size_t> counts{
      {"en", 610676}, {"zh", 35284}, {"bg", 8091}, {"de", 4693}, {"it", 4174},
      {"id", 3976},  {"ur", 3761},  {"ar", 2114}, {"ru", 1314}};
  return counts;
}

inline const std::map<std::string, std::size_t>& corpus_counts_after() {
  static const std::map<std::string, std::size_t> counts{
      {"en", 40000}, {"zh", 20000}, {"bg", 8091}, {"de", 4693}, {"it", 4174},
      {"id", 3976},  {"ur", 3761},  {"ar", 2114}, {"ru", 1314}};
  return counts;
}

}  // namespace oracle
