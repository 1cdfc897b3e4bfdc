#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "attrib/compute_cost.hpp"
#include "attrib/ecosystem.hpp"
#include "attrib/formal_lang.hpp"

namespace attrib {

struct Artifact {
  std::string name;
  std::string content;
};

/// Named documents from one run. `passed` is false when a check the run
/// performs did not hold; the documents are still complete.
struct RunOutput {
  std::vector<Artifact> artifacts;
  bool passed = true;

  const Artifact* find(std::string_view name) const;
};

/// "YYYY-MM:YYYY-MM"; throws InputError.
std::pair<YearMonth, YearMonth> parse_window(std::string_view text);
inline constexpr YearMonth kDefaultWindowStart{2019, 1};
inline constexpr YearMonth kDefaultWindowEnd{2025, 1};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Embeds `provenance` into every artifact in a form its format tolerates:
/// a top-level key for .json, a leading `#` line for .csv/.txt, an XML comment
/// for .svg. summary.txt is left alone.
void stamp(RunOutput& output, const nlohmann::json& provenance);

RunOutput run_telltale(const LanguageFamily& family);
RunOutput run_simulate(const LanguageFamily& family, const std::string& target, const std::string& learner,
                       std::size_t horizon, bool cumulative_schedule = false);

/// mode "nested" or "support". max_k = 0 picks horizon + 1.
RunOutput run_adversary(const std::string& mode, const std::string& learner, std::size_t horizon,
                        std::size_t max_k = 0);

RunOutput run_problang(std::size_t max_n, std::uint64_t seed, std::size_t trials);

struct GrowthConfig {
  int k = 1;
  YearMonth start = kDefaultWindowStart;
  YearMonth end = kDefaultWindowEnd;
  AccessMode mode = AccessMode::Strict;
};

RunOutput run_growth(const Snapshot& snapshot, const GrowthConfig& config);
RunOutput run_compute(const ComputeScenario& scenario);
RunOutput run_report_all(const Snapshot& snapshot, const GrowthConfig& config);

}  // namespace attrib
