#include "attrib/learner.hpp"

#include <algorithm>

namespace attrib {

std::string hypothesis_name(const LanguageFamily& family, Hypothesis h) {
  if (!h) return "none";
  return *h < family.size() ? family.names[*h] : "#" + std::to_string(*h);
}

ConsistencyTracker::ConsistencyTracker(std::shared_ptr<const LanguageFamily> family)
    : family_(std::move(family)), consistent_(family_->size(), true) {
  alive_.resize(family_->size());
  for (std::size_t i = 0; i < alive_.size(); ++i) alive_[i] = i;
}

void ConsistencyTracker::observe(const std::string& s) {
  if (has_last_ && s == last_) return;
  last_ = s;
  has_last_ = true;
  const bool over_alphabet = family_->alphabet().covers(s);
  std::erase_if(alive_, [&](std::size_t i) {
    bool keep = over_alphabet && (*family_)[i].contains_unchecked(s);
    if (!keep) consistent_[i] = false;
    return !keep;
  });
}

Hypothesis ConsistencyTracker::lowest_consistent() const {
  if (alive_.empty()) return std::nullopt;
  return alive_.front();
}

Hypothesis ConsistencyTracker::highest_consistent() const {
  if (alive_.empty()) return std::nullopt;
  return alive_.back();
}

MinConsistentLearner::MinConsistentLearner(std::shared_ptr<const LanguageFamily> family)
    : tracker_(std::move(family)) {}

std::unique_ptr<Learner> MinConsistentLearner::fresh() const {
  return std::make_unique<MinConsistentLearner>(tracker_.family_ptr());
}

GiveUpLearner::GiveUpLearner(std::shared_ptr<const LanguageFamily> family, std::size_t patience)
    : family_(family), tracker_(std::move(family)), patience_(patience) {
  current_ = tracker_.lowest_consistent();
}

void GiveUpLearner::observe(const std::string& s) {
  tracker_.observe(s);
  Hypothesis next;
  if (gave_up_ && current_ && tracker_.is_consistent(*current_)) {
    next = current_;
  } else if (changes_ >= patience_) {
    gave_up_ = true;
    next = tracker_.highest_consistent();
  } else {
    next = tracker_.lowest_consistent();
  }
  if (next != current_) ++changes_;
  current_ = next;
}

std::unique_ptr<Learner> GiveUpLearner::fresh() const { return std::make_unique<GiveUpLearner>(family_, patience_); }

}  // namespace attrib
