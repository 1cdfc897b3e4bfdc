#include "attrib/compute_cost.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "attrib/errors.hpp"

namespace attrib {

namespace {

std::string sci(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void require_positive(double v, const char* field) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ValidationError(std::string("scenario field '") + field + "' must be positive and finite");
  }
}

std::string bytes_human(double b) {
  static const char* units[] = {"B", "KB", "MB", "GB", "TB", "PB", "EB"};
  int u = 0;
  while (b >= 1000 && u < 6) {
    b /= 1000;
    ++u;
  }
  return fixed(b, 2) + " " + units[u];
}

}  // namespace

double stream_time(double tokens, double bytes_per_token, double io_bytes_per_sec) {
  require_positive(tokens, "tokens");
  require_positive(bytes_per_token, "bytes_per_token");
  require_positive(io_bytes_per_sec, "io_bytes_per_sec");
  return tokens * bytes_per_token / io_bytes_per_sec;
}

std::string human_duration(double seconds) {
  if (seconds < 3600) return fixed(seconds, seconds < 10 ? 2 : 1) + " s";
  if (seconds < 86400) return fixed(seconds / 3600, 2) + " h";
  if (seconds < kSecondsPerJulianYear) return fixed(seconds / 86400, 1) + " d";
  const double years = seconds / kSecondsPerJulianYear;
  return (years < 1e4 ? fixed(years, years < 10 ? 2 : 0) : sci(years)) + " yr";
}

ScenarioResult evaluate(const ComputeScenario& s) {
  require_positive(s.params_total, "params_total");
  require_positive(s.tokens, "tokens");
  require_positive(s.flops_per_param_token, "flops_per_param_token");
  require_positive(s.machine_flops_per_sec, "machine_flops_per_sec");
  require_positive(s.bytes_per_token, "bytes_per_token");
  require_positive(s.io_bytes_per_sec, "io_bytes_per_sec");
  ScenarioResult r;
  r.scenario = s;
  r.total_flops = s.params_total * s.tokens * s.flops_per_param_token;
  r.wall_seconds = r.total_flops / s.machine_flops_per_sec;
  r.wall_human = human_duration(r.wall_seconds);
  r.data_bytes = s.tokens * s.bytes_per_token;
  r.stream_seconds = stream_time(s.tokens, s.bytes_per_token, s.io_bytes_per_sec);
  return r;
}

std::vector<std::string> preset_names() {
  return {"paper-2025-single-item", "paper-daily-sweep", "paper-national-annual"};
}

ComputeScenario national_preset(std::optional<double> params_total) {
  ComputeScenario s;
  s.name = "paper-national-annual";
  s.params_total = params_total.value_or(kParams2025);
  s.tokens = kUsAdultUsers * kTokensPerUserDay * 365;
  return s;
}

ComputeScenario national_daily_preset(std::optional<double> params_total) {
  ComputeScenario s;
  s.name = "national-daily";
  s.params_total = params_total.value_or(kParams2025);
  s.tokens = kUsAdultUsers * kTokensPerUserDay;
  return s;
}

ComputeScenario preset(const std::string& name) {
  ComputeScenario s;
  s.name = name;
  s.params_total = kParams2025;
  if (name == "paper-2025-single-item") {
    s.tokens = 1e5;
  } else if (name == "paper-daily-sweep") {
    s.tokens = 1e4 * 1e5;
  } else if (name == "paper-national-annual") {
    return national_preset();
  } else {
    throw InputError("unknown compute preset '" + name + "'");
  }
  return s;
}

std::vector<SweepRow> sweep_grid(const CumulativeSeries& series, const std::vector<double>& token_lengths,
                                 const std::vector<int>& years) {
  std::vector<SweepRow> rows;
  for (int year : years) {
    auto params = params_at_year(series, year);
    if (!params || *params <= 0) continue;
    auto add = [&](double tokens, bool daily) {
      ComputeScenario s;
      s.params_total = *params;
      s.tokens = tokens;
      rows.push_back({year, *params, tokens, std::log10(evaluate(s).wall_seconds), daily});
    };
    for (double tokens : token_lengths) add(tokens, false);
    add(1e4 * 1e5, true);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "year,params_total,tokens,series,log10_wall_seconds\n";
  for (const auto& r : rows) {
    os << r.year << ',' << sci(r.params_total, 6) << ',' << sci(r.tokens, 6) << ','
       << (r.daily_sweep ? "daily_sweep" : "single_item") << ',' << fixed(r.log10_wall_seconds, 6) << '\n';
  }
  return os.str();
}

BudgetTable budget_table(std::optional<double> params_total) {
  return {evaluate(national_preset(params_total)), evaluate(national_daily_preset(params_total))};
}

std::string budget_table_text(const BudgetTable& t) {
  std::ostringstream os;
  os << "Annual exhaustive sweep, " << sci(t.annual.scenario.tokens) << " tokens over "
     << sci(t.annual.scenario.params_total) << " parameters\n";
  os << "  Total FLOPs                 " << sci(t.annual.total_flops) << '\n';
  os << "  Wall-clock time             " << sci(t.annual.wall_seconds) << " s (" << t.annual.wall_human << ")\n";
  os << "  Data volume                 " << bytes_human(t.annual.data_bytes) << '\n';
  os << "  Streaming time, annual      " << human_duration(t.annual.stream_seconds) << " ("
     << fixed(t.annual.stream_seconds / 60, 1) << " min)\n";
  os << "  Streaming time, one day     " << human_duration(t.daily.stream_seconds) << '\n';
  os << "note: the annual volume streams in " << fixed(t.annual.stream_seconds / 60, 1)
     << " min; a single day's volume streams in " << fixed(t.daily.stream_seconds, 2) << " s at the same rate\n";
  return os.str();
}

std::string budget_table_csv(const BudgetTable& t) {
  std::ostringstream os;
  os << "quantity,value,unit\n";
  os << "total_flops," << sci(t.annual.total_flops, 6) << ",FLOP\n";
  os << "wall_seconds," << sci(t.annual.wall_seconds, 6) << ",s\n";
  os << "wall_years," << fixed(t.annual.wall_seconds / kSecondsPerJulianYear, 3) << ",yr\n";
  os << "data_bytes," << sci(t.annual.data_bytes, 6) << ",B\n";
  os << "stream_seconds_annual," << fixed(t.annual.stream_seconds, 3) << ",s\n";
  os << "stream_seconds_daily," << fixed(t.daily.stream_seconds, 3) << ",s\n";
  return os.str();
}

nlohmann::json result_to_json(const ScenarioResult& r) {
  const auto& s = r.scenario;
  return {{"name", s.name},
          {"params_total", s.params_total},
          {"tokens", s.tokens},
          {"flops_per_param_token", s.flops_per_param_token},
          {"machine_flops_per_sec", s.machine_flops_per_sec},
          {"bytes_per_token", s.bytes_per_token},
          {"io_bytes_per_sec", s.io_bytes_per_sec},
          {"total_flops", r.total_flops},
          {"wall_seconds", r.wall_seconds},
          {"wall_human", r.wall_human},
          {"data_bytes", r.data_bytes},
          {"stream_seconds", r.stream_seconds}};
}

std::string results_csv(const std::vector<ScenarioResult>& results) {
  std::ostringstream os;
  os << "name,params_total,tokens,total_flops,wall_seconds,wall_human,data_bytes,stream_seconds\n";
  for (const auto& r : results) {
    os << r.scenario.name << ',' << sci(r.scenario.params_total, 6) << ',' << sci(r.scenario.tokens, 6) << ','
       << sci(r.total_flops, 6) << ',' << sci(r.wall_seconds, 6) << ',' << r.wall_human << ','
       << sci(r.data_bytes, 6) << ',' << sci(r.stream_seconds, 6) << '\n';
  }
  return os.str();
}

std::string result_text(const ScenarioResult& r) {
  std::ostringstream os;
  os << r.scenario.name << '\n';
  os << "  parameters      " << sci(r.scenario.params_total) << '\n';
  os << "  tokens          " << sci(r.scenario.tokens) << '\n';
  os << "  total FLOPs     " << sci(r.total_flops) << '\n';
  os << "  wall time       " << sci(r.wall_seconds) << " s (" << r.wall_human << ")\n";
  os << "  data volume     " << bytes_human(r.data_bytes) << '\n';
  os << "  streaming time  " << human_duration(r.stream_seconds) << '\n';
  return os.str();
}

}  // namespace attrib
