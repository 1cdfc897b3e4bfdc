#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrib/ecosystem.hpp"

namespace attrib {

inline constexpr double kFrontierFlops = 1.7e18;      // FLOP/s
inline constexpr double kFrontierIoBytes = 2.0e12;    // B/s
inline constexpr double kSecondsPerJulianYear = 3.1557e7;
inline constexpr double kParams2025 = 2.2e13;
inline constexpr double kUsAdultUsers = 1.32e8;
inline constexpr double kTokensPerUserDay = 1.0e4;

struct ComputeScenario {
  std::string name = "custom";
  double params_total = 0;
  double tokens = 0;
  double flops_per_param_token = 1;
  double machine_flops_per_sec = kFrontierFlops;
  double bytes_per_token = 4;
  double io_bytes_per_sec = kFrontierIoBytes;
};

struct ScenarioResult {
  ComputeScenario scenario;
  double total_flops = 0;
  double wall_seconds = 0;
  std::string wall_human;
  double data_bytes = 0;
  double stream_seconds = 0;
};

/// Throws ValidationError if any field is not strictly positive.
ScenarioResult evaluate(const ComputeScenario& scenario);
double stream_time(double tokens, double bytes_per_token, double io_bytes_per_sec);

/// "1.29 s", "3.59 h", "2.1 d", "197 yr".
std::string human_duration(double seconds);

std::vector<std::string> preset_names();
/// Throws InputError for an unknown name.
ComputeScenario preset(const std::string& name);
/// One year of daily use by every US adult; params default to the 2025 total.
ComputeScenario national_preset(std::optional<double> params_total = std::nullopt);
/// The same users' single-day volume.
ComputeScenario national_daily_preset(std::optional<double> params_total = std::nullopt);

struct SweepRow {
  int year = 0;
  double params_total = 0;
  double tokens = 0;
  double log10_wall_seconds = 0;
  bool daily_sweep = false;  // 10^4 items x 10^5 tokens
};

/// For every year with data in `series`, log10 wall seconds at each token
/// length plus the daily-sweep entry.
std::vector<SweepRow> sweep_grid(const CumulativeSeries& series, const std::vector<double>& token_lengths,
                                 const std::vector<int>& years);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Rows of the annual budget table: total FLOPs, wall time, data volume,
/// streaming time for the annual volume and for a single day.
struct BudgetTable {
  ScenarioResult annual;
  ScenarioResult daily;
};
BudgetTable budget_table(std::optional<double> params_total = std::nullopt);
std::string budget_table_text(const BudgetTable& table);
std::string budget_table_csv(const BudgetTable& table);

nlohmann::json result_to_json(const ScenarioResult& r);
std::string results_csv(const std::vector<ScenarioResult>& results);
std::string result_text(const ScenarioResult& r);

}  // namespace attrib
