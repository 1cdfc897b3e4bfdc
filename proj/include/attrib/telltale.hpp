#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "attrib/formal_lang.hpp"
#include "attrib/learner.hpp"

namespace attrib {

/// One finite witness set per family member, in family order.
struct TellTaleAssignment {
  std::vector<std::vector<std::string>> sets;
};

/// T_i = { canonical witness of L_i − L_j : L_j ⊊ L_i }.
/// Throws ValidationError if two members denote the same set.
TellTaleAssignment construct_telltales(const LanguageFamily& family);

struct AngluinVerdict {
  bool holds = true;
  /// (i, j): T_i ⊆ L_j and L_j ⊊ L_i. (i, i) means T_i ⊄ L_i.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  std::string reason;
};

AngluinVerdict verify_angluin_condition(const LanguageFamily& family, const TellTaleAssignment& telltales);

/// Array of {name, telltale} in family order.
nlohmann::json telltales_to_json(const LanguageFamily& family, const TellTaleAssignment& telltales);

/// Guesses the lowest i with T_i ⊆ S ⊆ L_i; falls back to the lowest
/// consistent language, then to the sentinel.
class FiniteClassLearner final : public Learner {
 public:
  FiniteClassLearner(std::shared_ptr<const LanguageFamily> family, TellTaleAssignment telltales);

  std::string name() const override { return "finite-class"; }
  Hypothesis hypothesis() const override;
  void observe(const std::string& s) override;
  std::unique_ptr<Learner> fresh() const override;

 private:
  ConsistencyTracker tracker_;
  TellTaleAssignment telltales_;
  std::unordered_map<std::string, std::vector<std::size_t>> owners_;
  std::vector<std::size_t> missing_;
  std::unordered_set<std::string> seen_;
};

std::unique_ptr<Learner> make_finite_class_learner(std::shared_ptr<const LanguageFamily> family,
                                                   const TellTaleAssignment& telltales);

}  // namespace attrib
