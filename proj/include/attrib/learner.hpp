#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "attrib/formal_lang.hpp"

namespace attrib {

/// Index into a family, or nullopt for the "no hypothesis" sentinel.
using Hypothesis = std::optional<std::size_t>;

std::string hypothesis_name(const LanguageFamily& family, Hypothesis h);

class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string name() const = 0;
  /// Current guess. Before any observation this is the empty-sample guess.
  virtual Hypothesis hypothesis() const = 0;
  virtual void observe(const std::string& s) = 0;
  /// Same learner with no observations.
  virtual std::unique_ptr<Learner> fresh() const = 0;
};

/// Tracks which family members still contain every observed string.
/// Consistency only ever drops, so each observation scans the survivors.
class ConsistencyTracker {
 public:
  explicit ConsistencyTracker(std::shared_ptr<const LanguageFamily> family);

  void observe(const std::string& s);

  bool is_consistent(std::size_t index) const { return consistent_[index]; }
  bool any_consistent() const { return !alive_.empty(); }
  Hypothesis lowest_consistent() const;
  Hypothesis highest_consistent() const;
  const std::vector<std::size_t>& survivors() const { return alive_; }
  const LanguageFamily& family() const { return *family_; }
  const std::shared_ptr<const LanguageFamily>& family_ptr() const { return family_; }

 private:
  std::shared_ptr<const LanguageFamily> family_;
  std::vector<bool> consistent_;
  std::vector<std::size_t> alive_;
  std::string last_;
  bool has_last_ = false;
};

/// Guesses the lowest-index language consistent with the sample.
class MinConsistentLearner final : public Learner {
 public:
  explicit MinConsistentLearner(std::shared_ptr<const LanguageFamily> family);
  std::string name() const override { return "min-consistent"; }
  Hypothesis hypothesis() const override { return tracker_.lowest_consistent(); }
  void observe(const std::string& s) override { tracker_.observe(s); }
  std::unique_ptr<Learner> fresh() const override;

 private:
  ConsistencyTracker tracker_;
};

/// Ignores the data and always names one language.
class ConstantLearner final : public Learner {
 public:
  ConstantLearner(std::string name, std::size_t index) : name_(std::move(name)), index_(index) {}
  std::string name() const override { return name_; }
  Hypothesis hypothesis() const override { return index_; }
  void observe(const std::string&) override {}
  std::unique_ptr<Learner> fresh() const override { return std::make_unique<ConstantLearner>(name_, index_); }

 private:
  std::string name_;
  std::size_t index_;
};

/// Min-consistent until it has changed its mind `patience` times, then jumps to
/// the highest-index consistent language and stays there while it fits.
class GiveUpLearner final : public Learner {
 public:
  GiveUpLearner(std::shared_ptr<const LanguageFamily> family, std::size_t patience);
  std::string name() const override { return "give-up-after-" + std::to_string(patience_); }
  Hypothesis hypothesis() const override { return current_; }
  void observe(const std::string& s) override;
  std::unique_ptr<Learner> fresh() const override;

 private:
  std::shared_ptr<const LanguageFamily> family_;
  ConsistencyTracker tracker_;
  std::size_t patience_;
  std::size_t changes_ = 0;
  bool gave_up_ = false;
  Hypothesis current_;
};

}  // namespace attrib
