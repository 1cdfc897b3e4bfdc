// Acceptance suite: one PASS/FAIL line per criterion.
//
//   attrib_acceptance                 criteria 1-9
//   attrib_acceptance --snapshot-only the criteria that need a real asset snapshot;
//                                     exits 77 (skip) when none is found
//
// The snapshot is looked up in $ATTRIB_SNAPSHOT_CSV, then data/ecosystem_assets.csv.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "attrib/ecosystem.hpp"
#include "attrib/errors.hpp"
#include "attrib/golds_game.hpp"
#include "attrib/growth.hpp"
#include "attrib/compute_cost.hpp"
#include "attrib/problang.hpp"
#include "attrib/reports.hpp"
#include "attrib/telltale.hpp"
#include "oracles.hpp"

using namespace attrib;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool needs_snapshot = false;  // failed only because the snapshot is missing
};

int failures = 0;
int missing_data = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) (o.needs_snapshot ? missing_data : failures) += 1;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool within(double value, double target, double rel) { return std::fabs(value - target) <= rel * std::fabs(target); }

std::optional<std::string> snapshot_path() {
  if (const char* env = std::getenv("ATTRIB_SNAPSHOT_CSV"); env && *env) {
    if (std::filesystem::exists(env)) return std::string(env);
  }
  const std::string bundled = std::string(ATTRIB_DATA_DIR) + "/ecosystem_assets.csv";
  if (std::filesystem::exists(bundled)) return bundled;
  return std::nullopt;
}

// Families of 1-3 distinct non-empty languages over a 3-string universe.
std::vector<LanguageFamily> exhaustive_tiny_families() {
  std::vector<LanguageFamily> out;
  for (const auto& [symbols, universe] : {std::pair<std::string, std::vector<std::string>>{"a", {"", "a", "aa"}},
                                          std::pair<std::string, std::vector<std::string>>{"ab", {"", "a", "b"}}}) {
    Alphabet alphabet(std::vector<char>(symbols.begin(), symbols.end()));
    std::vector<Language> subsets;
    for (unsigned mask = 1; mask < 8; ++mask) {
      std::vector<std::string> members;
      for (unsigned b = 0; b < 3; ++b) {
        if (mask & (1u << b)) members.push_back(universe[b]);
      }
      subsets.push_back(Language::finite(alphabet, members));
    }
    const std::size_t n = subsets.size();
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({{subsets[i]}, {"A"}});
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        out.push_back({{subsets[i], subsets[j]}, {"A", "B"}});
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          out.push_back({{subsets[i], subsets[j], subsets[k]}, {"A", "B", "C"}});
        }
      }
    }
  }
  return out;
}

std::vector<LanguageFamily> random_families(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LanguageFamily> out;
  while (out.size() < count) out.push_back(oracle::random_finite_family(rng, 3, 5, 4));
  return out;
}

// ---------------------------------------------------------------- 1

Outcome criterion_telltale_soundness() {
  const auto t0 = Clock::now();
  auto families = random_families(1000, 20240601);
  const std::size_t random_count = families.size();
  auto tiny = exhaustive_tiny_families();
  families.insert(families.end(), tiny.begin(), tiny.end());
  std::size_t bad = 0;
  std::string first_bad;
  for (const auto& f : families) {
    auto t = construct_telltales(f);
    const bool ours = verify_angluin_condition(f, t).holds;
    const bool brute = oracle::angluin_holds(f, t, 4);
    if (!ours || !brute) {
      if (!bad++) first_bad = f.names.front();
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = bad == 0 && secs < 30;
  o.detail = std::to_string(random_count) + " random + " + std::to_string(tiny.size()) +
             " exhaustive families, " + std::to_string(bad) + " violations, " + fmt("%.2f s", secs) + " (< 30 s)";
  return o;
}

// ---------------------------------------------------------------- 2

struct ConvergenceCheck {
  bool ok = true;
  std::size_t settle_step = 0;
  std::string why;
};

// After every tell-tale string of the target and one witness against each
// language not containing the target have been shown, the hypothesis is the
// target and never moves.
ConvergenceCheck check_finite_class(const std::shared_ptr<const LanguageFamily>& f, std::size_t target,
                                    const TellTaleAssignment& tt, Schedule schedule, std::size_t horizon) {
  ConvergenceCheck c;
  FairTeacher teacher((*f)[target], target, schedule);
  std::size_t settle = 0;
  for (const auto& s : tt.sets[target]) settle = std::max(settle, teacher.promised_step(s));
  for (std::size_t j = 0; j < f->size(); ++j) {
    if (j == target) continue;
    if (auto w = difference_witness((*f)[target], (*f)[j])) settle = std::max(settle, teacher.promised_step(*w));
  }
  c.settle_step = settle;
  if (settle > horizon) {
    c.ok = false;
    c.why = "settle step beyond horizon";
    return c;
  }
  auto learner = make_finite_class_learner(f, tt);
  auto r = run_simulation(teacher, *learner, f, horizon);
  if (!r.final_correct) {
    c.ok = false;
    c.why = "final hypothesis " + hypothesis_name(*f, r.final_hypothesis()) + " != " + f->names[target];
    return c;
  }
  if (settle == 0 && r.initial_hypothesis != target) {
    c.ok = false;
    c.why = "wrong before data";
  }
  for (std::size_t n = std::max<std::size_t>(settle, 1); n <= horizon; ++n) {
    if (r.hypothesis_trace[n - 1] != target) {
      c.ok = false;
      c.why = "mind change at step " + std::to_string(n) + " after settle step " + std::to_string(settle);
      break;
    }
  }
  if (!r.consistency_violations.empty()) {
    c.ok = false;
    c.why = "teacher emitted a non-member";
  }
  return c;
}

Outcome criterion_finite_class() {
  std::vector<LanguageFamily> families = random_families(300, 77);
  auto tiny = exhaustive_tiny_families();
  for (std::size_t i = 0; i < tiny.size(); i += 7) families.push_back(tiny[i]);
  families.push_back(load_family(std::string(ATTRIB_DATA_DIR) + "/three_chain.json"));
  families.push_back(build_unary_nested_family(12));
  // The nested family without Linf is finite and identifiable; Linf itself is
  // handled in criterion 3.
  families.back().languages.pop_back();
  families.back().names.pop_back();

  std::size_t runs = 0, bad = 0, max_settle = 0;
  std::string first_bad;
  const std::vector<std::size_t> horizons{10, 100, 1000};
  for (const auto& fam : families) {
    auto f = std::make_shared<const LanguageFamily>(fam);
    auto tt = construct_telltales(*f);
    for (std::size_t target = 0; target < f->size(); ++target) {
      for (auto schedule : {Schedule::LengthLex, Schedule::Cumulative}) {
        for (auto horizon : horizons) {
          auto c = check_finite_class(f, target, tt, schedule, horizon);
          if (!c.ok && c.why == "settle step beyond horizon" && horizon < horizons.back()) continue;
          ++runs;
          max_settle = std::max(max_settle, c.settle_step);
          if (!c.ok && !bad++) first_bad = f->names[target] + ": " + c.why;
        }
      }
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(families.size()) + " families, " + std::to_string(runs) +
             " runs over horizons 10/100/1000, max settle step " + std::to_string(max_settle) + ", " +
             std::to_string(bad) + " failures" + (bad ? " (first: " + first_bad + ")" : "");
  return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion_nested() {
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  std::ostringstream notes;
  std::string first_bad;
  for (std::size_t horizon : {100u, 1000u, 10000u}) {
    for (const auto& name : builtin_learner_names()) {
      auto family =
          std::make_shared<const LanguageFamily>(build_unary_nested_family(default_nested_max_k(name, horizon)));
      auto learner = make_builtin_learner(name, family);
      auto r = nested_adversary(*learner, family, horizon);
      const std::size_t esc = r.escalations.value_or(0);
      bool refuted = false;
      if (r.certificate && r.certificate->target) {
        // The named completion must contain everything shown and differ from the final guess.
        const auto& completion = (*family)[*r.certificate->target];
        refuted = *r.certificate->target != r.final_hypothesis() &&
                  std::all_of(r.transcript.begin(), r.transcript.end(),
                              [&](const std::string& s) { return completion.contains(s); });
      }
      bool ok = r.mind_changes >= esc || refuted;
      if (name == "min-consistent") {
        const bool enough = 2 * r.mind_changes + 2 >= horizon;  // mind_changes >= T/2 - 1
        ok = ok && enough;
        if (horizon == 10000) notes << "min-consistent " << r.mind_changes << " changes at T=10^4";
      }
      if (!ok && !bad++) first_bad = name + " at T=" + std::to_string(horizon);
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(builtin_learner_names().size()) + " learners x T in {10^2,10^3,10^4}, " +
             std::to_string(bad) + " failures" + (bad ? " (first: " + first_bad + ")" : "") + "; " + notes.str() +
             ", " + fmt("%.1f s", seconds_since(t0));
  return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion_theorem() {
  Outcome o;
  const auto m1 = partial_mass(p1_language(), 60);
  const auto m2 = partial_mass(p2_language(), 60);
  const Rational bound(boost::multiprecision::cpp_int(1), boost::multiprecision::cpp_int(1) << 58);
  const bool mass_ok = 1 - m1 <= bound && 1 - m2 <= bound && 1 - m1 >= 0 && 1 - m2 >= 0 &&
                       std::fabs(m1.convert_to<double>() - 1) <= 1e-9 && std::fabs(m2.convert_to<double>() - 1) <= 1e-9;
  const bool support_ok = support_equal_up_to(p1_language(), p2_language(), 60).equal;

  bool transcripts_ok = true;
  std::size_t runs = 0, errors = 0;
  const std::vector<std::string> learners{"min-consistent", "always-top", "always-first", "prob-support",
                                          "give-up-after-5"};
  for (const auto& name : learners) {
    for (std::size_t horizon : {10u, 100u, 1000u}) {
      for (bool canonical : {true, false}) {
        std::vector<std::string> seen[2];
        for (std::size_t label : {0u, 1u}) {
          auto l = make_builtin_learner(name, shared_support_family());
          auto r = support_adversary_run(*l, horizon, canonical, label);
          seen[label] = r.transcript;
          ++runs;
          errors += r.final_correct ? 0 : 1;
        }
        transcripts_ok = transcripts_ok && seen[0] == seen[1];
      }
    }
  }
  o.pass = mass_ok && support_ok && transcripts_ok && errors == runs;
  o.detail = "tails " + fmt("%.3g", (1 - m1).convert_to<double>()) + "/" + fmt("%.3g", (1 - m2).convert_to<double>()) +
             " (<= 2^-58: " + (mass_ok ? "yes" : "no") + "), supports equal to 60: " + (support_ok ? "yes" : "no") +
             ", transcripts label-independent: " + (transcripts_ok ? "yes" : "no") + ", error rate " +
             std::to_string(errors) + "/" + std::to_string(runs) + " over " + std::to_string(learners.size()) +
             " learners";
  return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion_iid() {
  const auto t0 = Clock::now();
  auto v = verify_alternating_pair(60, 2025, 1000);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = v.accuracy_ok && v.monotone_ok && secs < 60;
  std::ostringstream d;
  d << "accuracy by M (source P1/P2):";
  for (std::size_t i = 0; i < v.grid.size(); ++i) {
    d << ' ' << v.grid[i] << '=' << fmt("%.3f", v.accuracy_p1[i].accuracy()) << '/'
      << fmt("%.3f", v.accuracy_p2[i].accuracy());
  }
  d << ", nondecreasing within 2 sigma: " << (v.monotone_ok ? "yes" : "no") << ", " << fmt("%.2f s", secs)
    << " (< 60 s)";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion_bounds() {
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t c = 0; c <= 5; ++c)
    for (std::uint64_t o = 0; o <= 5; ++o)
      for (std::uint64_t d = 0; d <= 12; ++d)
        for (int k = 1; k <= 3; ++k) {
          ++checked;
          bad += n_bound(c, o, d, k) != brute_force_count(c, o, d, k);
        }
  const bool spots = n_bound(2, 3, 4, 1) == 17 && n_bound(2, 3, 4, 2) == 35 && n_bound(2, 3, 4, 3) == 47;
  Outcome out;
  out.pass = bad == 0 && spots;
  out.detail = std::to_string(checked) + " (C,O,D,k) cases, " + std::to_string(bad) + " mismatches; (2,3,4,k) -> " +
               std::to_string(n_bound(2, 3, 4, 1)) + "/" + std::to_string(n_bound(2, 3, 4, 2)) + "/" +
               std::to_string(n_bound(2, 3, 4, 3));
  return out;
}

// ---------------------------------------------------------------- 7 / 9

Outcome synthetic_fit() {
  std::vector<double> t, y;
  for (int i = 0; i < 12; ++i) {
    t.push_back(i / 12.0);
    y.push_back(5 * std::exp(1.0 * i / 12.0));
  }
  auto f = fit_exponential(t, y);
  Outcome o;
  o.pass = std::fabs(f.b - 1.0) <= 1e-9 && std::fabs(f.r2 - 1.0) <= 1e-12;
  o.detail = "synthetic b error " + fmt("%.2e", std::fabs(f.b - 1.0)) + ", R^2 = " + fmt("%.12f", f.r2);
  return o;
}

Outcome snapshot_fits(const Snapshot& snap) {
  const auto series = cumulative_series(snap, kDefaultWindowStart, kDefaultWindowEnd);
  struct Target {
    double b, b_tol, tau, tau_tol;
  };
  const Target targets[3] = {{1.39, 0.15, 0.50, 0.06}, {1.95, 0.20, 0.36, 0.05}, {2.51, 0.25, 0.28, 0.04}};
  Outcome o{true, "", false};
  for (int k = 1; k <= 3; ++k) {
    const auto& t = targets[k - 1];
    std::string line;
    try {
      auto f = fit_exponential(n_series(series, k), kDefaultWindowStart, kDefaultWindowEnd);
      const bool ok = std::fabs(f.b - t.b) <= t.b_tol && f.tau && std::fabs(*f.tau - t.tau) <= t.tau_tol &&
                      f.r2 >= 0.9;
      o.pass = o.pass && ok;
      line = "k=" + std::to_string(k) + " b=" + fmt("%.3f", f.b) + " tau=" + (f.tau ? fmt("%.3f", *f.tau) : "n/a") +
             " R^2=" + fmt("%.3f", f.r2) + (ok ? "" : " (out of tolerance)");
    } catch (const ValidationError& e) {
      o.pass = false;
      line = "k=" + std::to_string(k) + " fit failed: " + e.what();
    }
    o.detail += (o.detail.empty() ? "" : "; ") + line;
  }
  return o;
}

Outcome criterion_params(const Snapshot& raw) {
  const auto snap = impute_params(raw);
  const auto series = cumulative_series(snap, kDefaultWindowStart, kDefaultWindowEnd);
  const auto p2019 = params_at_year(series, 2019).value_or(0);
  const auto p2025 = params_at_year(series, 2025).value_or(0);
  Outcome o;
  o.pass = within(p2019, 1.3e10, 0.2) && within(p2025, 2.2e13, 0.2);
  o.detail = "2019: " + fmt("%.3g", p2019) + " (target 1.3e10 +-20%), 2025: " + fmt("%.3g", p2025) +
             " (target 2.2e13 +-20%), " + std::to_string(snap.imputed_count) + " sizes imputed";
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion_compute() {
  const auto one = evaluate(preset("paper-2025-single-item"));
  const auto day = evaluate(preset("paper-daily-sweep"));
  const auto table = budget_table();
  const double years = table.annual.wall_seconds / kSecondsPerJulianYear;
  const double pb = table.annual.data_bytes / 1e15;
  const double minutes = table.annual.stream_seconds / 60;
  Outcome o;
  o.pass = within(one.total_flops, 2.2e18, 1e-12) && within(one.wall_seconds, 1.3, 0.1) &&
           within(day.total_flops, 2.2e22, 1e-12) && within(day.wall_seconds / 3600, 3.6, 0.1) &&
           within(years, 200, 0.1) && within(pb, 1.9, 0.1) && within(minutes, 16, 0.1);
  o.detail = "single item " + fmt("%.3g", one.total_flops) + " FLOPs / " + fmt("%.3f s", one.wall_seconds) +
             "; daily " + fmt("%.3g", day.total_flops) + " FLOPs / " + fmt("%.2f h", day.wall_seconds / 3600) +
             "; annual " + fmt("%.1f yr", years) + ", " + fmt("%.2f PB", pb) + ", " + fmt("%.1f min", minutes) +
             " streaming (one day: " + fmt("%.2f s", table.daily.stream_seconds) + ")";
  return o;
}

std::optional<Snapshot> load_snapshot(const std::string& path) {
  auto snap = ingest_csv(path, default_region_map());
  std::printf("snapshot %s: %zu models, %zu datasets, %zu warnings\n", path.c_str(), snap.models.size(),
              snap.datasets.size(), snap.warnings.size());
  return snap;
}

}  // namespace

int main(int argc, char** argv) {
  const bool snapshot_only = argc > 1 && std::string(argv[1]) == "--snapshot-only";
  const auto path = snapshot_path();

  if (snapshot_only) {
    if (!path) {
      std::printf("SKIP snapshot criteria: no asset snapshot (set ATTRIB_SNAPSHOT_CSV or add data/ecosystem_assets.csv)\n");
      return 77;
    }
    auto snap = load_snapshot(*path);
    report(7, "fit recovery on the asset snapshot", snapshot_fits(*snap));
    report(9, "cumulative parameters on the asset snapshot", criterion_params(*snap));
    return failures == 0 ? 0 : 1;
  }

  report(1, "tell-tale soundness", criterion_telltale_soundness());
  report(2, "finite-class identification", criterion_finite_class());
  report(3, "nested-family non-identification", criterion_nested());
  report(4, "shared-support indistinguishability", criterion_theorem());
  report(5, "i.i.d. likelihood-ratio contrast", criterion_iid());
  report(6, "combinatorial bounds", criterion_bounds());

  std::optional<Snapshot> snap;
  if (path) snap = load_snapshot(*path);
  {
    auto o = synthetic_fit();
    auto bounds = criterion_bounds();
    if (snap) {
      auto s = snapshot_fits(*snap);
      o.pass = o.pass && s.pass;
      o.detail += "; snapshot: " + s.detail;
    } else {
      o.pass = o.pass && bounds.pass;
      o.detail += "; no asset snapshot available, degraded to the synthetic check plus the formula oracle of [6]";
    }
    report(7, "fit recovery", o);
  }
  report(8, "compute golden values", criterion_compute());
  if (snap) {
    report(9, "cumulative parameters", criterion_params(*snap));
  } else {
    Outcome o;
    o.pass = false;
    o.needs_snapshot = true;
    o.detail = "no asset snapshot available; not checkable offline (see ctest acceptance_snapshot)";
    report(9, "cumulative parameters", o);
  }

  std::printf("%d failed, %d not checkable without the asset snapshot\n", failures, missing_data);
  return failures == 0 ? 0 : 1;
}
