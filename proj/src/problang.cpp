#include "attrib/problang.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "attrib/errors.hpp"

namespace attrib {

namespace {

using boost::multiprecision::cpp_int;

Rational inverse_power_of_two(long long n) { return Rational(cpp_int(1), cpp_int(1) << static_cast<unsigned>(n)); }

/// Length of s if it is x^n with n >= 1, else 0.
std::size_t unary_length(std::string_view s) {
  if (s.empty()) return 0;
  for (char c : s) {
    if (c != 'x') return 0;
  }
  return s.size();
}

/// Sign of the correction term and its extra exponent for the alternating pair.
/// P1: odd −2^-(n+2), even +2^-(n+1).  P2: odd +2^-(n+2), even −2^-(n+1).
std::pair<int, int> correction(int which, std::size_t n) {
  const bool odd = n % 2 == 1;
  const int shift = odd ? 2 : 1;
  const int sign = (which == 1) == odd ? -1 : 1;
  return {sign, shift};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rational alternating(int which, long long n) {
  if (n < 1) throw InputError("pmf is defined for n >= 1");
  auto [sign, shift] = correction(which, static_cast<std::size_t>(n));
  Rational adj = inverse_power_of_two(n + shift);
  return sign > 0 ? inverse_power_of_two(n) + adj : inverse_power_of_two(n) - adj;
}

}  // namespace

Rational pmf_p1(long long n) { return alternating(1, n); }
Rational pmf_p2(long long n) { return alternating(2, n); }

std::string rational_string(const Rational& r) { return r.str(); }

// -------------------------------------------------------------------- Pmf

Pmf Pmf::alternating(int which) {
  if (which != 1 && which != 2) throw InputError("alternating pmf is P1 or P2");
  Pmf p;
  p.which_ = which;
  return p;
}

Pmf Pmf::table(std::vector<std::pair<std::string, Rational>> entries) {
  Pmf p;
  for (auto& [s, m] : entries) {
    if (m < 0) throw ValidationError("negative probability for \"" + s + "\"");
    p.table_[std::move(s)] += m;
  }
  return p;
}

Rational Pmf::mass(std::string_view s) const {
  if (which_ != 0) {
    auto n = unary_length(s);
    return n ? attrib::alternating(which_, static_cast<long long>(n)) : Rational(0);
  }
  auto it = table_.find(s);
  return it == table_.end() ? Rational(0) : it->second;
}

double Pmf::mass_double(std::string_view s) const {
  if (which_ != 0) {
    auto n = unary_length(s);
    if (!n) return 0.0;
    auto [sign, shift] = correction(which_, n);
    return std::ldexp(1.0, -static_cast<int>(n)) + sign * std::ldexp(1.0, -static_cast<int>(n) - shift);
  }
  auto it = table_.find(s);
  return it == table_.end() ? 0.0 : it->second.convert_to<double>();
}

double Pmf::log_mass(std::string_view s) const {
  if (which_ != 0) {
    auto n = unary_length(s);
    if (!n) return -std::numeric_limits<double>::infinity();
    auto [sign, shift] = correction(which_, n);
    // ln(2^-n (1 ± 2^-shift))
    return -static_cast<double>(n) * std::numbers::ln2 + std::log1p(sign * std::ldexp(1.0, -shift));
  }
  double m = mass_double(s);
  return m > 0 ? std::log(m) : -std::numeric_limits<double>::infinity();
}

ProbLanguage p1_language() { return {"P1", Language::unary_all(), Pmf::alternating(1)}; }
ProbLanguage p2_language() { return {"P2", Language::unary_all(), Pmf::alternating(2)}; }

Rational partial_mass(const ProbLanguage& p, std::size_t max_len) {
  Rational total = 0;
  for (const auto& s : p.support.enumerate_up_to(max_len)) total += p.pmf.mass(s);
  return total;
}

SupportComparison support_equal_up_to(const ProbLanguage& p, const ProbLanguage& q, std::size_t max_len) {
  auto positives = [max_len](const ProbLanguage& l) {
    std::vector<std::string> out;
    for (auto& s : l.support.enumerate_up_to(max_len)) {
      if (l.pmf.mass_double(s) > 0 || l.pmf.mass(s) > 0) out.push_back(std::move(s));
    }
    return out;
  };
  auto a = positives(p);
  auto b = positives(q);
  auto before = [](const std::string& x, const std::string& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  };
  std::sort(a.begin(), a.end(), before);
  std::sort(b.begin(), b.end(), before);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else {
      return {false, before(a[i], b[j]) ? a[i] : b[j]};
    }
  }
  if (i < a.size()) return {false, a[i]};
  if (j < b.size()) return {false, b[j]};
  return {true, std::nullopt};
}

ProbLanguage embed_deterministic(const Language& lang, std::size_t max_len, std::string name) {
  auto members = lang.enumerate_up_to(max_len);
  if (members.empty()) throw ValidationError("cannot embed a language with no members up to the length bound");
  const Rational each(cpp_int(1), cpp_int(members.size()));
  std::vector<std::pair<std::string, Rational>> entries;
  for (const auto& s : members) entries.emplace_back(s, each);
  auto support = Language::finite(lang.alphabet(), members);
  return {std::move(name), std::move(support), Pmf::table(std::move(entries))};
}

// ---------------------------------------------------------------- sampling

std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

Sampler::Sampler(const ProbLanguage& p, std::size_t cutoff) {
  outcomes_ = p.support.enumerate_up_to(cutoff);
  Rational exact = 0;
  double running = 0;
  for (const auto& s : outcomes_) {
    exact += p.pmf.mass(s);
    running += p.pmf.mass_double(s);
    cdf_.push_back(running);
  }
  if (outcomes_.empty() || exact < Rational(1) - Rational(1, 1000000)) {
    throw ValidationError("pmf of '" + p.name + "' is not normalized up to length " + std::to_string(cutoff));
  }
  cdf_.back() = 1.0;
}

std::vector<std::string> sample(const ProbLanguage& p, std::uint64_t seed, std::size_t count) {
  Sampler sampler(p);
  auto rng = seeded_rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.draw(rng));
  return out;
}

// ---------------------------------------------------------- divergences

double kl_truncated(const ProbLanguage& p, const ProbLanguage& q, std::size_t max_len) {
  double total = 0;
  for (const auto& s : p.support.enumerate_up_to(max_len)) {
    double pm = p.pmf.mass_double(s);
    if (pm <= 0) continue;
    double lq = q.pmf.log_mass(s);
    if (std::isinf(lq)) return std::numeric_limits<double>::infinity();
    total += pm * (p.pmf.log_mass(s) - lq);
  }
  return total;
}

double log_likelihood_ratio(const std::vector<std::string>& samples, const ProbLanguage& p, const ProbLanguage& q) {
  double total = 0;
  for (const auto& s : samples) {
    double lp = p.pmf.log_mass(s);
    double lq = q.pmf.log_mass(s);
    if (std::isinf(lp) && std::isinf(lq)) continue;
    total += lp - lq;
  }
  return total;
}

int likelihood_ratio_classify(const std::vector<std::string>& samples, const ProbLanguage& p, const ProbLanguage& q) {
  return log_likelihood_ratio(samples, p, q) >= 0 ? 1 : 2;
}

double AccuracyPoint::sigma() const {
  // Laplace-smoothed so that an all-correct cell still carries sampling error.
  const double n = static_cast<double>(trials);
  const double a = (static_cast<double>(correct) + 1.0) / (n + 2.0);
  return n > 0 ? std::sqrt(a * (1 - a) / n) : 0.0;
}

AccuracyPoint classifier_accuracy(const ProbLanguage& p, const ProbLanguage& q, int source_label,
                                  std::size_t sample_size, std::size_t trials, std::uint64_t seed) {
  if (source_label != 1 && source_label != 2) throw InputError("source label must be 1 or 2");
  Sampler sampler(source_label == 1 ? p : q);
  AccuracyPoint point{sample_size, trials, 0};
  std::vector<std::string> draws(sample_size);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = seeded_rng(splitmix64(seed) ^ t);
    for (auto& d : draws) d = sampler.draw(rng);
    if (likelihood_ratio_classify(draws, p, q) == source_label) ++point.correct;
  }
  return point;
}

bool nondecreasing_within_2sigma(const std::vector<AccuracyPoint>& points) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double s = std::hypot(points[i].sigma(), points[i + 1].sigma());
    if (points[i + 1].accuracy() < points[i].accuracy() - 2 * s) return false;
  }
  return true;
}

// ---------------------------------------------------------------- learner

Hypothesis HypothesisDistribution::argmax() const {
  Hypothesis best;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0 && (!best || weights[i] > weights[*best])) best = i;
  }
  return best;
}

ProbLearner::ProbLearner(std::shared_ptr<const LanguageFamily> supports) : tracker_(std::move(supports)) {}

std::unique_ptr<Learner> ProbLearner::fresh() const { return std::make_unique<ProbLearner>(tracker_.family_ptr()); }

HypothesisDistribution ProbLearner::distribution() const {
  HypothesisDistribution d;
  d.weights.assign(tracker_.family().size(), 0.0);
  const auto& alive = tracker_.survivors();
  for (auto i : alive) d.weights[i] = 1.0 / static_cast<double>(alive.size());
  return d;
}

std::unique_ptr<ProbLearner> make_prob_learner(const std::vector<ProbLanguage>& candidates) {
  if (candidates.empty()) throw InputError("prob learner needs at least one candidate");
  auto family = std::make_shared<LanguageFamily>();
  for (const auto& c : candidates) {
    family->languages.push_back(c.support);
    family->names.push_back(c.name);
  }
  return std::make_unique<ProbLearner>(std::move(family));
}

// ------------------------------------------------------------ verification

ProblangVerification verify_alternating_pair(std::size_t max_n, std::uint64_t seed, std::size_t trials,
                                             std::vector<std::size_t> grid) {
  if (max_n < 1) throw InputError("max_n must be at least 1");
  const auto p1 = p1_language();
  const auto p2 = p2_language();
  ProblangVerification v;
  v.max_n = max_n;

  v.normalization_ok = true;
  v.positivity_ok = true;
  Rational s1 = 0;
  Rational s2 = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto a = pmf_p1(static_cast<long long>(n));
    auto b = pmf_p2(static_cast<long long>(n));
    v.positivity_ok = v.positivity_ok && a > 0 && b > 0;
    s1 += a;
    s2 += b;
    // Partial sums grow, never pass 1, and the tail obeys the 2^-(N-2) envelope.
    const Rational envelope(cpp_int(4), cpp_int(1) << static_cast<unsigned>(n));
    for (const auto* s : {&s1, &s2}) {
      const Rational tail = Rational(1) - *s;
      if (tail < 0 || tail > envelope) v.normalization_ok = false;
    }
  }
  v.mass_p1 = s1;
  v.mass_p2 = s2;
  // And the truncated mass is within 1e-9 of 1.
  const Rational tolerance(cpp_int(1), cpp_int(1000000000));
  if (Rational(1) - s1 > tolerance || Rational(1) - s2 > tolerance) v.normalization_ok = false;
  v.support = support_equal_up_to(p1, p2, max_n);
  v.kl_12 = kl_truncated(p1, p2, max_n);
  v.kl_21 = kl_truncated(p2, p1, max_n);

  v.grid = std::move(grid);
  for (auto m : v.grid) {
    v.accuracy_p1.push_back(classifier_accuracy(p1, p2, 1, m, trials, splitmix64(seed) ^ (m << 1)));
    v.accuracy_p2.push_back(classifier_accuracy(p1, p2, 2, m, trials, splitmix64(seed + 1) ^ (m << 1)));
  }
  v.accuracy_ok = !v.grid.empty() && v.accuracy_p1.back().accuracy() >= 0.99 &&
                  v.accuracy_p2.back().accuracy() >= 0.99;
  v.monotone_ok = nondecreasing_within_2sigma(v.accuracy_p1) && nondecreasing_within_2sigma(v.accuracy_p2);
  return v;
}

nlohmann::json ProblangVerification::to_json() const {
  auto tail = [](const Rational& m) { return (Rational(1) - m).convert_to<double>(); };
  nlohmann::json grid_doc = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid_doc.push_back({{"M", grid[i]},
                        {"trials", accuracy_p1[i].trials},
                        {"accuracy_source_p1", accuracy_p1[i].accuracy()},
                        {"accuracy_source_p2", accuracy_p2[i].accuracy()},
                        {"sigma_source_p1", accuracy_p1[i].sigma()},
                        {"sigma_source_p2", accuracy_p2[i].sigma()}});
  }
  return {
      {"max_n", max_n},
      {"partial_mass_p1", mass_p1.convert_to<double>()},
      {"partial_mass_p2", mass_p2.convert_to<double>()},
      {"partial_mass_p1_exact", rational_string(mass_p1)},
      {"partial_mass_p2_exact", rational_string(mass_p2)},
      {"tail_p1", tail(mass_p1)},
      {"tail_p2", tail(mass_p2)},
      {"normalization_ok", normalization_ok},
      {"positivity_ok", positivity_ok},
      {"support_equal", support.equal},
      {"support_first_difference", support.first_difference ? nlohmann::json(*support.first_difference) : nullptr},
      {"kl_12", kl_12},
      {"kl_21", kl_21},
      {"classifier_accuracy_by_M", std::move(grid_doc)},
      {"accuracy_ok", accuracy_ok},
      {"monotone_ok", monotone_ok},
      {"passed", passed()},
  };
}

std::string ProblangVerification::accuracy_csv() const {
  std::ostringstream os;
  os << "M,trials,accuracy_source_p1,sigma_source_p1,accuracy_source_p2,sigma_source_p2\n";
  os.precision(6);
  os << std::fixed;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << grid[i] << ',' << accuracy_p1[i].trials << ',' << accuracy_p1[i].accuracy() << ','
       << accuracy_p1[i].sigma() << ',' << accuracy_p2[i].accuracy() << ',' << accuracy_p2[i].sigma() << '\n';
  }
  return os.str();
}

}  // namespace attrib
