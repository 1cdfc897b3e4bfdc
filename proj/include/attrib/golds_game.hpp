#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "attrib/formal_lang.hpp"
#include "attrib/learner.hpp"

namespace attrib {

class Teacher {
 public:
  virtual ~Teacher() = default;
  virtual std::string name() const = 0;
  virtual std::string next() = 0;
  /// Family index the presentation is drawn from, if the teacher commits to one.
  virtual Hypothesis declared_target() const = 0;
};

/// How a fair teacher walks its language.
enum class Schedule {
  /// Members in length-lex order, each once; finite languages then cycle.
  LengthLex,
  /// Round m re-emits every member of length <= m, then m grows.
  Cumulative,
};

class FairTeacher final : public Teacher {
 public:
  /// Throws ValidationError for an empty language.
  FairTeacher(Language language, Hypothesis target, Schedule schedule = Schedule::LengthLex);

  std::string name() const override;
  std::string next() override;
  Hypothesis declared_target() const override { return target_; }

  /// 1-based step by which member `s` has certainly been emitted.
  std::size_t promised_step(std::string_view s) const;

 private:
  std::size_t members_shorter_than(std::size_t len) const;

  Language language_;
  Hypothesis target_;
  Schedule schedule_;
  bool finite_;
  std::vector<std::string> buffer_;
  std::size_t position_ = 0;
  std::size_t length_ = 0;  // current length (LengthLex) or round bound (Cumulative)
  bool started_ = false;
};

struct Certificate {
  enum class Kind { RefutingCompletion, ForcedError };
  Kind kind;
  Hypothesis target;
  std::string target_name;
  std::string detail;
};

struct SimulationReport {
  std::string learner;
  std::string teacher;
  std::size_t horizon = 0;
  std::vector<std::string> family_names;
  Hypothesis initial_hypothesis;
  std::vector<Hypothesis> hypothesis_trace;  // H_1 .. H_horizon
  std::size_t mind_changes = 0;              // n in 1..horizon with H_n != H_{n-1}
  std::optional<std::size_t> converged_at;   // step the final guess was adopted (0 = before data)
  Hypothesis declared_target;
  bool final_correct = false;
  std::vector<std::string> transcript;
  std::vector<std::size_t> consistency_violations;  // steps
  std::optional<std::size_t> escalations;
  std::optional<Certificate> certificate;

  Hypothesis final_hypothesis() const { return hypothesis_trace.empty() ? initial_hypothesis : hypothesis_trace.back(); }
  nlohmann::json to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Feeds exactly `horizon` strings and audits consistency at every step.
SimulationReport run_simulation(Teacher& teacher, Learner& learner, std::shared_ptr<const LanguageFamily> family,
                                std::size_t horizon);

/// Diagonalizing teacher for the unary nested family: answers a guess L_k with
/// x^(k+1) and otherwise repeats its last string.
SimulationReport nested_adversary(Learner& learner, std::shared_ptr<const LanguageFamily> family, std::size_t horizon);

/// Two-language family of the shared support {x, xx, ...}: names P1, P2.
std::shared_ptr<const LanguageFamily> shared_support_family();

/// Emits the shared support of P1/P2 whatever the labeling; the target is
/// fixed only once the learner's final guess is known.
class SupportAdversary final : public Teacher {
 public:
  SupportAdversary(bool canonical, std::size_t provisional_target);
  std::string name() const override { return canonical_ ? "support-adversary" : "support-adversary-cumulative"; }
  std::string next() override { return inner_.next(); }
  Hypothesis declared_target() const override { return target_; }
  /// Fixes the target to the model the learner did not pick.
  std::size_t resolve(Hypothesis final_guess);

 private:
  bool canonical_;
  FairTeacher inner_;
  std::size_t target_;
};

SimulationReport support_adversary_run(Learner& learner, std::size_t horizon, bool canonical,
                                       std::size_t provisional_target);

/// Size of the unary nested family used against `learner`: horizon + 1, except
/// for finite-class, whose tell-tales on that family total about k^3/6 symbols
/// and is capped at kFiniteClassNestedCap.
inline constexpr std::size_t kFiniteClassNestedCap = 256;
std::size_t default_nested_max_k(std::string_view learner, std::size_t horizon);

/// Names accepted by make_builtin_learner.
std::vector<std::string> builtin_learner_names();
/// "min-consistent", "finite-class", "always-top", "always-first",
/// "give-up-after-N", "prob-support".
std::unique_ptr<Learner> make_builtin_learner(std::string_view name, std::shared_ptr<const LanguageFamily> family);

}  // namespace attrib
