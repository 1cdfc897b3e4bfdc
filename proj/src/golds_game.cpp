#include "attrib/golds_game.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "attrib/errors.hpp"
#include "attrib/problang.hpp"
#include "attrib/telltale.hpp"

namespace attrib {

// ------------------------------------------------------------ FairTeacher

FairTeacher::FairTeacher(Language language, Hypothesis target, Schedule schedule)
    : language_(std::move(language)), target_(target), schedule_(schedule) {
  if (language_.is_empty()) throw ValidationError("a fair teacher needs a non-empty language");
  finite_ = language_.is_finite();
  if (finite_ && schedule_ == Schedule::LengthLex) {
    buffer_ = language_.enumerate_up_to(language_.longest_member_length());
  }
}

std::string FairTeacher::name() const {
  return schedule_ == Schedule::LengthLex ? "fair-lengthlex" : "fair-cumulative";
}

std::string FairTeacher::next() {
  if (schedule_ == Schedule::LengthLex) {
    if (finite_) {
      auto s = buffer_[position_];
      position_ = (position_ + 1) % buffer_.size();
      return s;
    }
    while (!started_ || position_ >= buffer_.size()) {
      length_ = started_ ? length_ + 1 : 0;
      started_ = true;
      buffer_ = language_.members_of_length(length_);
      position_ = 0;
    }
    return buffer_[position_++];
  }
  // Cumulative rounds; a finite language stops growing once its longest member is in.
  while (!started_ || position_ >= buffer_.size()) {
    if (started_ && !(finite_ && length_ >= language_.longest_member_length())) ++length_;
    started_ = true;
    buffer_ = language_.enumerate_up_to(length_);
    position_ = 0;
  }
  return buffer_[position_++];
}

std::size_t FairTeacher::members_shorter_than(std::size_t len) const {
  std::size_t count = 0;
  for (std::size_t l = 0; l < len; ++l) count += language_.members_of_length(l).size();
  return count;
}

std::size_t FairTeacher::promised_step(std::string_view s) const {
  if (!language_.contains(s)) throw InputError("promised_step: string is not a member of the target");
  const auto same_length = language_.members_of_length(s.size());
  const auto rank = static_cast<std::size_t>(
      std::find(same_length.begin(), same_length.end(), s) - same_length.begin());
  if (schedule_ == Schedule::LengthLex) return members_shorter_than(s.size()) + rank + 1;
  // Rounds 0 .. |s|-1 each emit everything no longer than the round bound.
  std::size_t step = 0;
  std::size_t cumulative = 0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    cumulative += language_.members_of_length(m).size();
    step += cumulative;
  }
  return step + cumulative + rank + 1;
}

// -------------------------------------------------------------- reports

namespace {

nlohmann::json hypothesis_json(Hypothesis h) { return h ? nlohmann::json(*h) : nlohmann::json(nullptr); }

std::string hypothesis_cell(Hypothesis h) { return h ? std::to_string(*h) : std::string("-1"); }

void finalize_trace(SimulationReport& r) {
  r.mind_changes = 0;
  Hypothesis prev = r.initial_hypothesis;
  std::size_t adopted = 0;
  for (std::size_t n = 0; n < r.hypothesis_trace.size(); ++n) {
    if (r.hypothesis_trace[n] != prev) {
      ++r.mind_changes;
      adopted = n + 1;
    }
    prev = r.hypothesis_trace[n];
  }
  r.converged_at.reset();
  if (r.final_hypothesis()) r.converged_at = adopted;
}

std::string names_of(const LanguageFamily& family, Hypothesis h) { return hypothesis_name(family, h); }

}  // namespace

nlohmann::json SimulationReport::to_json() const {
  auto name_of = [&](Hypothesis h) -> std::string {
    if (!h) return "none";
    return *h < family_names.size() ? family_names[*h] : std::to_string(*h);
  };
  nlohmann::json trace = nlohmann::json::array();
  for (auto h : hypothesis_trace) trace.push_back(hypothesis_json(h));
  nlohmann::json doc{
      {"learner", learner},
      {"teacher", teacher},
      {"horizon", horizon},
      {"initial_hypothesis", hypothesis_json(initial_hypothesis)},
      {"hypothesis_trace", std::move(trace)},
      {"final_hypothesis", hypothesis_json(final_hypothesis())},
      {"final_hypothesis_name", name_of(final_hypothesis())},
      {"declared_target", hypothesis_json(declared_target)},
      {"declared_target_name", name_of(declared_target)},
      {"mind_changes", mind_changes},
      {"converged_at", converged_at ? nlohmann::json(*converged_at) : nlohmann::json(nullptr)},
      {"final_correct", final_correct},
      {"consistency_violations", consistency_violations},
  };
  if (escalations) doc["escalations"] = *escalations;
  if (certificate) {
    nlohmann::json cert{{"target", hypothesis_json(certificate->target)},
                        {"target_name", certificate->target_name},
                        {"detail", certificate->detail}};
    if (certificate->kind == Certificate::Kind::RefutingCompletion) {
      doc["refuting_completion"] = std::move(cert);
    } else {
      doc["forced_error"] = std::move(cert);
    }
  }
  return doc;
}

std::string SimulationReport::csv_header() {
  return "learner,teacher,horizon,mind_changes,converged_at,final_hypothesis,declared_target,final_correct,"
         "escalations,consistency_violations,certificate_target";
}

std::string SimulationReport::csv_row() const {
  std::ostringstream os;
  os << learner << ',' << teacher << ',' << horizon << ',' << mind_changes << ','
     << (converged_at ? std::to_string(*converged_at) : std::string()) << ',' << hypothesis_cell(final_hypothesis())
     << ',' << hypothesis_cell(declared_target) << ',' << (final_correct ? "true" : "false") << ','
     << (escalations ? std::to_string(*escalations) : std::string()) << ',' << consistency_violations.size() << ','
     << (certificate ? certificate->target_name : std::string());
  return os.str();
}

// ------------------------------------------------------------ simulation

SimulationReport run_simulation(Teacher& teacher, Learner& learner, std::shared_ptr<const LanguageFamily> family,
                                std::size_t horizon) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  SimulationReport report;
  report.learner = learner.name();
  report.teacher = teacher.name();
  report.horizon = horizon;
  report.family_names = family->names;
  report.initial_hypothesis = learner.hypothesis();
  report.hypothesis_trace.reserve(horizon);
  report.transcript.reserve(horizon);
  ConsistencyTracker audit(family);
  for (std::size_t n = 1; n <= horizon; ++n) {
    auto s = teacher.next();
    learner.observe(s);
    audit.observe(s);
    auto h = learner.hypothesis();
    if (audit.any_consistent() && !(h && *h < family->size() && audit.is_consistent(*h))) {
      report.consistency_violations.push_back(n);
    }
    report.hypothesis_trace.push_back(h);
    report.transcript.push_back(std::move(s));
  }
  finalize_trace(report);
  report.declared_target = teacher.declared_target();
  report.final_correct = report.final_hypothesis() && report.declared_target &&
                         *report.final_hypothesis() == *report.declared_target;
  return report;
}

namespace {

/// Diagonalizer; the target it eventually names depends on the learner's last guess.
class NestedAdversaryTeacher final : public Teacher {
 public:
  NestedAdversaryTeacher(const Learner& learner, std::size_t top) : learner_(learner), top_(top) {}
  std::string name() const override { return "nested-adversary"; }
  Hypothesis declared_target() const override { return std::nullopt; }
  std::string next() override {
    auto h = learner_.hypothesis();
    if (!h || *h >= top_) {
      if (last_.empty()) last_ = "x";
      if (max_len_ == 0) max_len_ = 1;
      return last_;
    }
    const std::size_t k = *h + 1;  // index i names L_{i+1}
    last_.assign(k + 1, 'x');
    if (k + 1 > max_len_) {
      max_len_ = k + 1;
      ++escalations_;
    }
    return last_;
  }
  std::size_t max_len() const { return max_len_; }
  std::size_t escalations() const { return escalations_; }

 private:
  const Learner& learner_;
  std::size_t top_;
  std::string last_;
  std::size_t max_len_ = 0;
  std::size_t escalations_ = 0;
};

void require_unary_nested(const LanguageFamily& family) {
  const auto n = family.size();
  bool ok = n >= 2 && std::holds_alternative<Language::UnaryAll>(family[n - 1].kind());
  for (std::size_t i = 0; ok && i + 1 < n; ++i) {
    auto* t = std::get_if<Language::UnaryThreshold>(&family[i].kind());
    ok = t && t->k == i + 1;
  }
  if (!ok) throw InputError("nested adversary needs the family [L1, ..., Lk, Linf]");
}

}  // namespace

SimulationReport nested_adversary(Learner& learner, std::shared_ptr<const LanguageFamily> family, std::size_t horizon) {
  require_unary_nested(*family);
  const std::size_t top = family->size() - 1;
  const std::size_t max_k = top;
  NestedAdversaryTeacher teacher(learner, top);
  auto report = run_simulation(teacher, learner, family, horizon);
  report.escalations = teacher.escalations();

  const std::size_t m = teacher.max_len();
  auto final_guess = report.final_hypothesis();
  Certificate cert{Certificate::Kind::RefutingCompletion, std::nullopt, "", ""};
  if (final_guess && *final_guess < top) {
    cert.target = top;
    cert.detail = "transcript lies in Linf; continue with x^n for every n > " + std::to_string(m) +
                  " after cycling x^1..x^" + std::to_string(m);
  } else if (m <= max_k) {
    cert.target = m - 1;
    cert.detail = "transcript lies in L" + std::to_string(m) + "; continue by cycling x^1..x^" + std::to_string(m);
  }
  if (cert.target) {
    cert.target_name = names_of(*family, cert.target);
    report.certificate = cert;
    report.declared_target = cert.target;
  } else {
    // Longest string exceeds every finite member; only Linf remains.
    report.declared_target = top;
  }
  report.final_correct = final_guess && report.declared_target && *final_guess == *report.declared_target;
  return report;
}

// ------------------------------------------------------ support adversary

std::shared_ptr<const LanguageFamily> shared_support_family() {
  auto family = std::make_shared<LanguageFamily>();
  family->languages = {Language::unary_all(), Language::unary_all()};
  family->names = {"P1", "P2"};
  return family;
}

SupportAdversary::SupportAdversary(bool canonical, std::size_t provisional_target)
    : canonical_(canonical),
      inner_(Language::unary_all(), std::nullopt, canonical ? Schedule::LengthLex : Schedule::Cumulative),
      target_(provisional_target) {
  if (provisional_target > 1) throw InputError("support adversary target must be 0 (P1) or 1 (P2)");
}

std::size_t SupportAdversary::resolve(Hypothesis final_guess) {
  if (final_guess && *final_guess <= 1) target_ = 1 - *final_guess;
  return target_;
}

SimulationReport support_adversary_run(Learner& learner, std::size_t horizon, bool canonical,
                                       std::size_t provisional_target) {
  auto family = shared_support_family();
  SupportAdversary teacher(canonical, provisional_target);
  auto report = run_simulation(teacher, learner, family, horizon);
  const auto target = teacher.resolve(report.final_hypothesis());
  report.declared_target = target;
  report.final_correct = report.final_hypothesis() && *report.final_hypothesis() == target;
  report.certificate = Certificate{Certificate::Kind::ForcedError, target, family->names[target],
                                   "learner's final guess " + hypothesis_name(*family, report.final_hypothesis()) +
                                       "; the identical transcript is fair for " + family->names[target] +
                                       ", which is declared the source"};
  return report;
}

// -------------------------------------------------------------- registry

std::size_t default_nested_max_k(std::string_view learner, std::size_t horizon) {
  if (learner == "finite-class") return std::min(horizon + 1, kFiniteClassNestedCap);
  return horizon + 1;
}

std::vector<std::string> builtin_learner_names() {
  return {"min-consistent", "finite-class", "always-top", "always-first", "give-up-after-5", "prob-support"};
}

std::unique_ptr<Learner> make_builtin_learner(std::string_view name, std::shared_ptr<const LanguageFamily> family) {
  if (name == "min-consistent") return std::make_unique<MinConsistentLearner>(family);
  if (name == "finite-class") {
    auto telltales = construct_telltales(*family);
    return make_finite_class_learner(family, telltales);
  }
  if (name == "always-top") return std::make_unique<ConstantLearner>("always-top", family->size() - 1);
  if (name == "always-first") return std::make_unique<ConstantLearner>("always-first", 0);
  if (name == "prob-support") return std::make_unique<ProbLearner>(family);
  constexpr std::string_view prefix = "give-up-after-";
  if (name.starts_with(prefix)) {
    std::size_t patience = 0;
    auto digits = name.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), patience);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return std::make_unique<GiveUpLearner>(family, patience);
    }
  }
  throw InputError("unknown learner '" + std::string(name) + "'");
}

}  // namespace attrib
