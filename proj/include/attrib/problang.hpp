#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "attrib/formal_lang.hpp"
#include "attrib/learner.hpp"

namespace attrib {

using Rational = boost::multiprecision::cpp_rational;

/// 1/2^n − 1/2^(n+2) for odd n, 1/2^n + 1/2^(n+1) for even n. Throws for n < 1.
Rational pmf_p1(long long n);
/// 1/2^n + 1/2^(n+2) for odd n, 1/2^n − 1/2^(n+1) for even n. Throws for n < 1.
Rational pmf_p2(long long n);

/// Probability mass over strings. Either one of the two length-alternating
/// unary distributions or an explicit finite table.
class Pmf {
 public:
  static Pmf alternating(int which);
  static Pmf table(std::vector<std::pair<std::string, Rational>> entries);

  Rational mass(std::string_view s) const;
  double mass_double(std::string_view s) const;
  /// ln mass; -inf where the mass is zero.
  double log_mass(std::string_view s) const;

 private:
  int which_ = 0;  // 1 or 2 for the alternating pair, 0 for a table
  std::map<std::string, Rational, std::less<>> table_;
};

struct ProbLanguage {
  std::string name;
  Language support;
  Pmf pmf;
};

ProbLanguage p1_language();
ProbLanguage p2_language();

/// Σ pmf(s) over support members with |s| <= max_len.
Rational partial_mass(const ProbLanguage& p, std::size_t max_len);

struct SupportComparison {
  bool equal = true;
  std::optional<std::string> first_difference;
};

/// Compares {s : |s| <= N, pmf(s) > 0} for both languages.
SupportComparison support_equal_up_to(const ProbLanguage& p, const ProbLanguage& q, std::size_t max_len);

/// Uniform pmf over the members of `lang` no longer than max_len.
ProbLanguage embed_deterministic(const Language& lang, std::size_t max_len, std::string name = "embedded");

/// Inverse-CDF sampler over support members up to `cutoff`; the residual tail
/// mass is folded into the last member.
class Sampler {
 public:
  explicit Sampler(const ProbLanguage& p, std::size_t cutoff = 60);
  template <class Rng>
  const std::string& draw(Rng& rng) const {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return outcomes_[static_cast<std::size_t>(it - cdf_.begin())];
  }

 private:
  std::vector<std::string> outcomes_;
  std::vector<double> cdf_;
};

/// Seeded generator used for every draw in this module.
std::mt19937_64 seeded_rng(std::uint64_t seed);

std::vector<std::string> sample(const ProbLanguage& p, std::uint64_t seed, std::size_t count);

/// Σ_{|s| <= N} p(s) ln(p(s)/q(s)); +inf if q vanishes where p does not.
double kl_truncated(const ProbLanguage& p, const ProbLanguage& q, std::size_t max_len);

double log_likelihood_ratio(const std::vector<std::string>& samples, const ProbLanguage& p, const ProbLanguage& q);
/// 1 iff Σ ln(p/q) > 0; a tie goes to 1.
int likelihood_ratio_classify(const std::vector<std::string>& samples, const ProbLanguage& p, const ProbLanguage& q);

struct AccuracyPoint {
  std::size_t sample_size = 0;
  std::size_t trials = 0;
  std::size_t correct = 0;
  double accuracy() const { return trials ? static_cast<double>(correct) / static_cast<double>(trials) : 0.0; }
  double sigma() const;
};

/// Monte Carlo: draw `sample_size` strings from `source` (label 1 = p, 2 = q)
/// in each trial and count correct likelihood-ratio calls.
AccuracyPoint classifier_accuracy(const ProbLanguage& p, const ProbLanguage& q, int source_label,
                                  std::size_t sample_size, std::size_t trials, std::uint64_t seed);

struct HypothesisDistribution {
  std::vector<double> weights;
  Hypothesis argmax() const;
};

/// Keeps every candidate whose support covers the sample, weighted uniformly.
class ProbLearner final : public Learner {
 public:
  explicit ProbLearner(std::shared_ptr<const LanguageFamily> supports);
  std::string name() const override { return "prob-support"; }
  Hypothesis hypothesis() const override { return distribution().argmax(); }
  void observe(const std::string& s) override { tracker_.observe(s); }
  std::unique_ptr<Learner> fresh() const override;
  HypothesisDistribution distribution() const;

 private:
  ConsistencyTracker tracker_;
};

std::unique_ptr<ProbLearner> make_prob_learner(const std::vector<ProbLanguage>& candidates);

struct ProblangVerification {
  std::size_t max_n = 60;
  Rational mass_p1;
  Rational mass_p2;
  bool normalization_ok = false;
  bool positivity_ok = false;
  SupportComparison support;
  double kl_12 = 0;
  double kl_21 = 0;
  std::vector<std::size_t> grid;
  std::vector<AccuracyPoint> accuracy_p1;
  std::vector<AccuracyPoint> accuracy_p2;
  bool accuracy_ok = false;
  bool monotone_ok = false;

  bool passed() const { return normalization_ok && positivity_ok && support.equal && accuracy_ok && monotone_ok; }
  nlohmann::json to_json() const;
  std::string accuracy_csv() const;
};

/// Normalization, positivity, support equality, KL, and the i.i.d. accuracy grid.
ProblangVerification verify_alternating_pair(std::size_t max_n, std::uint64_t seed, std::size_t trials,
                                             std::vector<std::size_t> grid = {1, 10, 50, 200});

/// acc[i+1] >= acc[i] − 2σ of the difference, for consecutive grid points.
bool nondecreasing_within_2sigma(const std::vector<AccuracyPoint>& points);

std::string rational_string(const Rational& r);

}  // namespace attrib
