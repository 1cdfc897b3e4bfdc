#include "attrib/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "attrib/csv.hpp"
#include "attrib/errors.hpp"
#include "attrib/golds_game.hpp"
#include "attrib/growth.hpp"
#include "attrib/problang.hpp"
#include "attrib/svg.hpp"
#include "attrib/telltale.hpp"

namespace attrib {

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

double calendar_year(YearMonth t) { return t.year + (t.month - 1) / 12.0; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fit_line(const std::string& metric, const ExpFit& f) {
  return metric + ": b = " + fixed(f.b, 3) + "/yr, R^2 = " + fixed(f.r2, 3) +
         ", tau = " + (f.tau ? fixed(*f.tau, 3) + " yr" : std::string("n/a")) + " (" +
         std::to_string(f.points_used) + " points, " + std::to_string(f.zeros_dropped) + " zero)\n";
}

svg::Series points_series(const std::string& label, const std::vector<GrowthPoint>& pts) {
  svg::Series s{label, {}, {}, false};
  for (const auto& p : pts) {
    s.x.push_back(calendar_year(p.t));
    s.y.push_back(static_cast<double>(p.n));
  }
  return s;
}

svg::Series fit_series(const std::string& label, const ExpFit& f, const std::vector<GrowthPoint>& pts,
                       YearMonth start, YearMonth end) {
  svg::Series s{label, {}, {}, true};
  const YearMonth origin = pts.front().t;
  for (const auto& p : pts) {
    if (p.t < start || p.t > end) continue;
    s.x.push_back(calendar_year(p.t));
    s.y.push_back(std::exp(f.ln_a + f.b * p.t.years_since(origin)));
  }
  return s;
}

std::optional<ExpFit> try_fit(const std::vector<GrowthPoint>& pts, YearMonth start, YearMonth end) {
  try {
    return fit_exponential(pts, start, end);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

}  // namespace

const Artifact* RunOutput::find(std::string_view name) const {
  for (const auto& a : artifacts) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::pair<YearMonth, YearMonth> parse_window(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("window must look like YYYY-MM:YYYY-MM");
  auto start = YearMonth::parse(text.substr(0, colon));
  auto end = YearMonth::parse(text.substr(colon + 1));
  if (end < start) throw InputError("window end precedes its start");
  return {start, end};
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void stamp(RunOutput& output, const nlohmann::json& provenance) {
  const std::string line = provenance.dump();
  for (auto& a : output.artifacts) {
    if (a.name == "summary.txt") continue;
    if (ends_with(a.name, ".json")) {
      auto doc = nlohmann::json::parse(a.content);
      if (doc.is_object()) {
        doc["provenance"] = provenance;
      } else {
        doc = nlohmann::json{{"provenance", provenance}, {"data", std::move(doc)}};
      }
      a.content = dump(doc);
    } else if (ends_with(a.name, ".csv") || ends_with(a.name, ".txt")) {
      a.content = "# provenance: " + line + "\n" + a.content;
    } else if (ends_with(a.name, ".svg")) {
      std::string safe = line;
      for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
      auto close = a.content.find(">\n");
      a.content.insert(close + 2, "<!-- provenance: " + safe + " -->\n");
    }
  }
}

// ------------------------------------------------------------ formal games

RunOutput run_telltale(const LanguageFamily& family) {
  RunOutput out;
  auto telltales = construct_telltales(family);
  auto verdict = verify_angluin_condition(family, telltales);
  nlohmann::json doc{{"family", family.names},
                     {"telltales", telltales_to_json(family, telltales)},
                     {"verified", verdict.holds}};
  if (!verdict.holds) {
    doc["violation"] = {{"i", family.names[verdict.violation->first]},
                        {"j", family.names[verdict.violation->second]},
                        {"reason", verdict.reason}};
  }
  out.passed = verdict.holds;
  out.artifacts.push_back({"telltale.json", dump(doc)});
  std::ostringstream summary;
  summary << "family of " << family.size() << " languages; Angluin condition "
          << (verdict.holds ? "verified" : "VIOLATED: " + verdict.reason) << '\n';
  for (std::size_t i = 0; i < family.size(); ++i) {
    summary << "  T_" << family.names[i] << " = {";
    for (std::size_t j = 0; j < telltales.sets[i].size(); ++j) {
      summary << (j ? ", " : "") << '"' << telltales.sets[i][j] << '"';
    }
    summary << "}\n";
  }
  out.artifacts.push_back({"summary.txt", summary.str()});
  return out;
}

namespace {

void add_report(RunOutput& out, const SimulationReport& report) {
  out.artifacts.push_back({"report.json", dump(report.to_json())});
  std::ostringstream trace;
  trace << "step,string,hypothesis\n";
  trace << "0,," << (report.initial_hypothesis ? report.family_names[*report.initial_hypothesis] : "none") << '\n';
  for (std::size_t i = 0; i < report.hypothesis_trace.size(); ++i) {
    const auto& h = report.hypothesis_trace[i];
    trace << i + 1 << ',' << report.transcript[i] << ',' << (h ? report.family_names[*h] : "none") << '\n';
  }
  out.artifacts.push_back({"trace.csv", trace.str()});
  std::ostringstream summary;
  auto name = [&](Hypothesis h) { return h ? report.family_names[*h] : std::string("none"); };
  summary << report.learner << " vs " << report.teacher << ", horizon " << report.horizon << ": final "
          << name(report.final_hypothesis()) << ", target " << name(report.declared_target) << ", "
          << report.mind_changes << " mind changes";
  if (report.escalations) summary << ", " << *report.escalations << " escalations";
  summary << '\n';
  if (report.certificate) {
    summary << (report.certificate->kind == Certificate::Kind::ForcedError ? "forced-error" : "refuting-completion")
            << " certificate: " << report.certificate->target_name << "; " << report.certificate->detail << '\n';
  }
  out.artifacts.push_back({"summary.txt", summary.str()});
}

}  // namespace

RunOutput run_simulate(const LanguageFamily& family, const std::string& target, const std::string& learner,
                       std::size_t horizon, bool cumulative_schedule) {
  auto shared = std::make_shared<const LanguageFamily>(family);
  auto index = shared->index_of(target);
  if (!index) throw InputError("target '" + target + "' is not in the family");
  auto l = make_builtin_learner(learner, shared);
  FairTeacher teacher((*shared)[*index], *index, cumulative_schedule ? Schedule::Cumulative : Schedule::LengthLex);
  RunOutput out;
  add_report(out, run_simulation(teacher, *l, shared, horizon));
  return out;
}

RunOutput run_adversary(const std::string& mode, const std::string& learner, std::size_t horizon, std::size_t max_k) {
  RunOutput out;
  if (mode == "nested") {
    auto family = std::make_shared<const LanguageFamily>(build_unary_nested_family(max_k ? max_k : default_nested_max_k(learner, horizon)));
    auto l = make_builtin_learner(learner, family);
    add_report(out, nested_adversary(*l, family, horizon));
  } else if (mode == "support") {
    auto l = make_builtin_learner(learner, shared_support_family());
    add_report(out, support_adversary_run(*l, horizon, true, 0));
  } else {
    throw InputError("adversary mode must be 'nested' or 'support', got '" + mode + "'");
  }
  return out;
}

RunOutput run_problang(std::size_t max_n, std::uint64_t seed, std::size_t trials) {
  RunOutput out;
  auto v = verify_alternating_pair(max_n, seed, trials);
  out.passed = v.passed();
  out.artifacts.push_back({"problang.json", dump(v.to_json())});
  out.artifacts.push_back({"accuracy.csv", v.accuracy_csv()});
  std::ostringstream summary;
  auto mark = [](bool ok) { return ok ? "ok" : "FAILED"; };
  summary << "normalization up to n=" << max_n << ": " << mark(v.normalization_ok) << '\n'
          << "positivity: " << mark(v.positivity_ok) << '\n'
          << "support equality: " << mark(v.support.equal) << '\n'
          << "KL(P1||P2) = " << fixed(v.kl_12, 6) << ", KL(P2||P1) = " << fixed(v.kl_21, 6) << '\n'
          << "classifier accuracy at M=" << v.grid.back() << ": " << fixed(v.accuracy_p1.back().accuracy(), 4)
          << " (P1), " << fixed(v.accuracy_p2.back().accuracy(), 4) << " (P2): " << mark(v.accuracy_ok) << '\n'
          << "accuracy nondecreasing within 2 sigma: " << mark(v.monotone_ok) << '\n';
  out.artifacts.push_back({"summary.txt", summary.str()});
  return out;
}

// --------------------------------------------------------------- analytics

RunOutput run_growth(const Snapshot& snapshot, const GrowthConfig& config) {
  RunOutput out;
  const auto series = cumulative_series(snapshot, config.start, config.end, config.mode);
  const auto points = n_series(series, config.k);
  const auto fit = fit_exponential(points, config.start, config.end);
  const std::string metric = "N_k" + std::to_string(config.k);
  out.artifacts.push_back({"growth.csv", growth_csv(series)});
  out.artifacts.push_back({"fits.csv", fits_csv({{metric, fit}})});
  out.artifacts.push_back({"fits.json", dump(fits_json({{metric, fit}}))});
  svg::Chart chart{"Hypothesis-space lower bound, k = " + std::to_string(config.k), "year", "N(t)"};
  out.artifacts.push_back(
      {"growth.svg", svg::line_chart(chart, {points_series(metric, points),
                                             fit_series("fit b=" + fixed(fit.b, 2), fit, points, config.start,
                                                        config.end)})});
  out.artifacts.push_back({"summary.txt", fit_line(metric, fit)});
  return out;
}

RunOutput run_compute(const ComputeScenario& scenario) {
  RunOutput out;
  auto r = evaluate(scenario);
  out.artifacts.push_back({"compute.csv", results_csv({r})});
  std::string text = result_text(r);
  if (scenario.name == "paper-national-annual") {
    auto table = budget_table(scenario.params_total);
    out.artifacts.push_back({"budget_table.csv", budget_table_csv(table)});
    text += "\n" + budget_table_text(table);
  }
  out.artifacts.push_back({"compute.txt", text});
  out.artifacts.push_back({"summary.txt", text});
  return out;
}

RunOutput run_report_all(const Snapshot& raw, const GrowthConfig& config) {
  RunOutput out;
  const Snapshot snapshot = impute_params(raw);
  const auto series = cumulative_series(snapshot, config.start, config.end, config.mode);
  std::ostringstream summary;
  summary << "models " << snapshot.models.size() << ", datasets " << snapshot.datasets.size() << ", rows "
          << snapshot.rows_read << ", skipped " << snapshot.skipped_rows() << ", imputed sizes "
          << snapshot.imputed_count << '\n';

  // ingest report
  {
    nlohmann::json doc{{"label", snapshot.label},
                       {"rows_read", snapshot.rows_read},
                       {"models", snapshot.models.size()},
                       {"datasets", snapshot.datasets.size()},
                       {"others", snapshot.others.size()},
                       {"skipped_rows", snapshot.skipped_rows()},
                       {"warnings", snapshot.warnings.size()},
                       {"imputed_count", snapshot.imputed_count},
                       {"imputation_mean", snapshot.imputation_mean ? nlohmann::json(*snapshot.imputation_mean)
                                                                    : nlohmann::json(nullptr)}};
    out.artifacts.push_back({"snapshot_summary.json", dump(doc)});
    std::ostringstream w;
    w << "row,field,skipped,message\n";
    for (const auto& x : snapshot.warnings) {
      w << x.row << ',' << x.field << ',' << (x.skipped ? 1 : 0) << ',' << csv::escape(x.message) << '\n';
    }
    out.artifacts.push_back({"ingest_warnings.csv", w.str()});
  }

  std::vector<FitRow> fits;
  // bounds for k = 1..3
  {
    out.artifacts.push_back({"n_bounds.csv", growth_csv(series)});
    std::vector<svg::Series> lines;
    for (int k = 1; k <= 3; ++k) {
      auto pts = n_series(series, k);
      const std::string metric = "N_k" + std::to_string(k);
      auto fit = try_fit(pts, config.start, config.end);
      lines.push_back(points_series(metric, pts));
      if (fit) {
        fits.push_back({metric, *fit});
        lines.push_back(fit_series(metric + " fit", *fit, pts, config.start, config.end));
        summary << fit_line(metric, *fit);
      } else {
        summary << metric << ": too few positive points to fit\n";
      }
      if (k == 1) {
        std::vector<svg::Series> first(lines.begin(), lines.end());
        out.artifacts.push_back({"n_single.svg", svg::line_chart({"Single-dataset lower bound", "year", "N(t)"},
                                                                 first)});
      }
    }
    out.artifacts.push_back({"n_bounds.svg", svg::line_chart({"Lower bounds for k <= 1, 2, 3", "year", "N(t)"},
                                                             lines)});
  }

  // slices
  for (auto [dimension, label] : {std::pair{SliceDimension::Modality, "modality"},
                                  std::pair{SliceDimension::Region, "region"}}) {
    auto slices = slice_series(snapshot, dimension, config.start, config.end, 1, config.mode);
    std::ostringstream csv;
    csv << "t,slice,C,O,D,N\n";
    std::vector<svg::Series> lines;
    for (const auto& [name, pts] : slices) {
      for (const auto& p : pts) {
        csv << p.t.str() << ',' << name << ',' << p.closed << ',' << p.open << ',' << p.datasets << ',' << p.n
            << '\n';
      }
      lines.push_back(points_series(name, pts));
      if (auto fit = try_fit(pts, config.start, config.end)) {
        fits.push_back({std::string(label) + ":" + name, *fit});
        summary << fit_line(std::string(label) + ":" + name, *fit);
      }
    }
    out.artifacts.push_back({std::string("slices_") + label + ".csv", csv.str()});
    out.artifacts.push_back({std::string("slices_") + label + ".svg",
                             svg::line_chart({"Single-dataset bound by " + std::string(label), "year", "N(t)"},
                                             lines)});
  }
  out.artifacts.push_back({"fits.csv", fits_csv(fits)});
  out.artifacts.push_back({"fits.json", dump(fits_json(fits))});

  // parameter totals
  {
    std::ostringstream csv;
    csv << "t,params_total\n";
    svg::Series line{"cumulative parameters", {}, {}, false};
    for (std::size_t i = 0; i < series.grid.size(); ++i) {
      csv << series.grid[i].str() << ',' << sci(series.params_total[i]) << '\n';
      line.x.push_back(calendar_year(series.grid[i]));
      line.y.push_back(series.params_total[i]);
    }
    out.artifacts.push_back({"params.csv", csv.str()});
    out.artifacts.push_back({"params.svg", svg::line_chart({"Cumulative parameters of known models", "year",
                                                            "parameters"},
                                                           {line})});
  }

  // compute sweep
  std::vector<int> years;
  for (int y = config.start.year; y <= config.end.year; ++y) years.push_back(y);
  const auto sweep = sweep_grid(series, {1e3, 1e4, 1e5}, years);
  out.artifacts.push_back({"compute_sweep.csv", sweep_csv(sweep)});
  {
    std::vector<svg::Series> lines;
    for (double tokens : {1e3, 1e4, 1e5}) {
      svg::Series s{"single item, " + fixed(tokens, 0) + " tokens", {}, {}, false};
      for (const auto& r : sweep) {
        if (!r.daily_sweep && r.tokens == tokens) {
          s.x.push_back(r.year);
          s.y.push_back(std::pow(10.0, r.log10_wall_seconds));
        }
      }
      lines.push_back(s);
    }
    svg::Series daily{"daily sweep", {}, {}, false};
    for (const auto& r : sweep) {
      if (r.daily_sweep) {
        daily.x.push_back(r.year);
        daily.y.push_back(std::pow(10.0, r.log10_wall_seconds));
      }
    }
    lines.push_back(daily);
    out.artifacts.push_back({"compute_sweep.svg", svg::line_chart({"Brute-force wall time on the reference machine",
                                                                   "year", "seconds"},
                                                                  lines)});
  }

  auto params_2025 = params_at_year(series, 2025);
  std::vector<ScenarioResult> presets;
  for (const auto& name : preset_names()) presets.push_back(evaluate(preset(name)));
  out.artifacts.push_back({"compute_presets.csv", results_csv(presets)});
  auto table = budget_table(params_2025 && *params_2025 > 0 ? params_2025 : std::nullopt);
  out.artifacts.push_back({"budget_table.csv", budget_table_csv(table)});
  out.artifacts.push_back({"budget_table.txt", budget_table_text(table)});
  summary << budget_table_text(table);
  out.artifacts.push_back({"summary.txt", summary.str()});
  return out;
}

}  // namespace attrib
