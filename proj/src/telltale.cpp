#include "attrib/telltale.hpp"

#include <algorithm>

#include "attrib/errors.hpp"

namespace attrib {

TellTaleAssignment construct_telltales(const LanguageFamily& family) {
  const auto n = family.size();
  TellTaleAssignment out;
  out.sets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& set = out.sets[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !is_subset(family[j], family[i])) continue;
      auto witness = difference_witness(family[i], family[j]);
      if (!witness) {
        throw ValidationError("languages '" + family.names[i] + "' and '" + family.names[j] +
                              "' are indistinct; no witness separates them");
      }
      set.push_back(std::move(*witness));
    }
    const auto& alphabet = family[i].alphabet();
    std::sort(set.begin(), set.end(), [&](const auto& a, const auto& b) { return alphabet.less(a, b); });
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return out;
}

AngluinVerdict verify_angluin_condition(const LanguageFamily& family, const TellTaleAssignment& telltales) {
  const auto n = family.size();
  if (telltales.sets.size() != n) {
    return {false, std::nullopt, "tell-tale assignment is not parallel to the family"};
  }
  auto subset_of = [&](const std::vector<std::string>& t, const Language& l) {
    return std::all_of(t.begin(), t.end(), [&](const std::string& s) {
      return l.alphabet().covers(s) && l.contains_unchecked(s);
    });
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!subset_of(telltales.sets[i], family[i])) {
      return {false, std::pair{i, i}, "T_" + family.names[i] + " is not contained in its own language"};
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (subset_of(telltales.sets[i], family[j]) && is_proper_subset(family[j], family[i])) {
        return {false, std::pair{i, j},
                "T_" + family.names[i] + " fits inside " + family.names[j] + ", a proper subset of " +
                    family.names[i]};
      }
    }
  }
  return {true, std::nullopt, ""};
}

nlohmann::json telltales_to_json(const LanguageFamily& family, const TellTaleAssignment& telltales) {
  auto doc = nlohmann::json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    doc.push_back({{"name", family.names[i]}, {"telltale", telltales.sets.at(i)}});
  }
  return doc;
}

FiniteClassLearner::FiniteClassLearner(std::shared_ptr<const LanguageFamily> family, TellTaleAssignment telltales)
    : tracker_(std::move(family)), telltales_(std::move(telltales)) {
  missing_.resize(telltales_.sets.size());
  for (std::size_t i = 0; i < telltales_.sets.size(); ++i) {
    missing_[i] = telltales_.sets[i].size();
    for (const auto& s : telltales_.sets[i]) owners_[s].push_back(i);
  }
}

Hypothesis FiniteClassLearner::hypothesis() const {
  for (auto i : tracker_.survivors()) {
    if (missing_[i] == 0) return i;
  }
  return tracker_.lowest_consistent();
}

void FiniteClassLearner::observe(const std::string& s) {
  tracker_.observe(s);
  if (!seen_.insert(s).second) return;
  if (auto it = owners_.find(s); it != owners_.end()) {
    for (auto i : it->second) --missing_[i];
  }
}

std::unique_ptr<Learner> FiniteClassLearner::fresh() const {
  return std::make_unique<FiniteClassLearner>(tracker_.family_ptr(), telltales_);
}

std::unique_ptr<Learner> make_finite_class_learner(std::shared_ptr<const LanguageFamily> family,
                                                   const TellTaleAssignment& telltales) {
  return std::make_unique<FiniteClassLearner>(std::move(family), telltales);
}

}  // namespace attrib
