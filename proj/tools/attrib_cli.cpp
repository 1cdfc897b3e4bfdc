// Command-line front end. Everything goes through the C API in attrib.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "attrib/attrib.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kCheck = 3, kInternal = 4 };

int exit_code(attrib_status s) {
  switch (s) {
    case ATTRIB_OK: return kOk;
    case ATTRIB_E_INPUT:
    case ATTRIB_E_PARSE:
    case ATTRIB_E_IO: return kInput;
    case ATTRIB_E_VALIDATION:
    case ATTRIB_E_CHECK_FAILED: return kCheck;
    case ATTRIB_E_INTERNAL: return kInternal;
  }
  return kInternal;
}

struct ArtifactsPtr {
  attrib_artifacts* p = nullptr;
  ~ArtifactsPtr() { attrib_artifacts_destroy(p); }
};

struct SnapshotPtr {
  attrib_snapshot* p = nullptr;
  ~SnapshotPtr() { attrib_snapshot_destroy(p); }
};

struct FamilyPtr {
  attrib_family* p = nullptr;
  ~FamilyPtr() { attrib_family_destroy(p); }
};

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(attrib_fnv1a64(bytes.data(), bytes.size())));
  return buf;
}

// Write to a sibling temp file, then rename over the target.
bool write_atomic(const fs::path& target, const std::string& content) {
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) return false;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

std::string content_of(const attrib_artifacts* a, const char* name) {
  auto i = attrib_artifacts_find(a, name);
  if (i == static_cast<size_t>(-1)) return {};
  size_t len = 0;
  const char* c = attrib_artifacts_content(a, i, &len);
  return std::string(c, len);
}

class Run {
 public:
  Run(std::string subcommand, nlohmann::json config) : subcommand_(std::move(subcommand)), config_(std::move(config)) {}

  void add_input(const std::string& role, const std::string& path) {
    inputs_[role] = {{"path", path}, {"hash", hash_file(path)}};
  }

  // Stamps provenance, writes requested artifacts, prints the summary. Returns the exit code.
  int finish(attrib_status status, attrib_artifacts* a, const std::vector<std::pair<std::string, std::string>>& files,
             const std::string& primary) {
    if (status != ATTRIB_OK && status != ATTRIB_E_CHECK_FAILED) return fail(status);
    nlohmann::json prov{{"tool", "attrib"},
                        {"version", attrib_version()},
                        {"subcommand", subcommand_},
                        {"config", config_},
                        {"inputs", inputs_.empty() ? nlohmann::json::object() : inputs_}};
    if (auto s = attrib_artifacts_stamp(a, prov.dump().c_str()); s != ATTRIB_OK) return fail(s);

    bool wrote = false;
    for (const auto& [artifact, path] : files) {
      if (path.empty()) continue;
      if (!write_atomic(path, content_of(a, artifact.c_str()))) {
        std::cerr << "error: cannot write " << path << '\n';
        return kInput;
      }
      wrote = true;
    }
    if (wrote) {
      std::cout << content_of(a, "summary.txt");
    } else {
      std::cout << content_of(a, primary.c_str());
    }
    if (status == ATTRIB_E_CHECK_FAILED) std::cerr << "check failed\n";
    return exit_code(status);
  }

  static int fail(attrib_status status) {
    std::cerr << "error: " << attrib_status_name(status) << ": " << attrib_last_error() << '\n';
    return exit_code(status);
  }

 private:
  std::string subcommand_;
  nlohmann::json config_;
  nlohmann::json inputs_ = nlohmann::json::object();
};

const auto kWindowCheck = CLI::Validator(
    [](std::string& s) -> std::string {
      auto ok_month = [](const std::string& m) {
        return m.size() == 7 && m[4] == '-' && std::isdigit(static_cast<unsigned char>(m[0])) &&
               std::isdigit(static_cast<unsigned char>(m[5])) && std::isdigit(static_cast<unsigned char>(m[6]));
      };
      auto colon = s.find(':');
      if (colon == std::string::npos || !ok_month(s.substr(0, colon)) || !ok_month(s.substr(colon + 1))) {
        return "expected YYYY-MM:YYYY-MM";
      }
      return {};
    },
    "YYYY-MM:YYYY-MM", "window");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learnability simulations and model-ecosystem analytics"};
  app.set_version_flag("--version", std::string(attrib_version()));
  app.require_subcommand(1);

  std::string family_path, out_path, svg_path, fits_path, trace_path, csv_path, report_path, out_dir;
  std::string assets_path, region_map_path, target, learner = "min-consistent", mode = "nested", preset;
  std::string window = "2019-01:2025-01";
  std::size_t horizon = 100, max_k = 0, max_n = 60, trials = 1000;
  std::uint64_t seed = 1;
  int k = 1;
  bool strict_access = true, cumulative = false;
  attrib_compute_params custom{};
  attrib_compute_defaults(&custom);

  auto* telltale = app.add_subcommand("telltale", "Construct and verify tell-tale sets for a finite family");
  telltale->add_option("--family", family_path, "Family document (JSON)")->required()->check(CLI::ExistingFile);
  telltale->add_option("--out", out_path, "Write the tell-tale document here");

  auto* simulate = app.add_subcommand("simulate", "Run a learner against a fair presentation of one member");
  simulate->add_option("--family", family_path, "Family document (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--target", target, "Name of the presented language")->required();
  simulate->add_option("--learner", learner, "Learner name")->capture_default_str();
  simulate->add_option("--horizon", horizon, "Number of strings presented")->capture_default_str()->check(
      CLI::PositiveNumber);
  simulate->add_flag("--cumulative", cumulative, "Re-present all short members each round");
  simulate->add_option("--out", out_path, "Write the report here");
  simulate->add_option("--trace", trace_path, "Write the step-by-step trace CSV here");

  auto* adversary = app.add_subcommand("adversary", "Run a learner against an adversarial presentation");
  adversary->add_option("--mode", mode, "nested or support")
      ->capture_default_str()
      ->check(CLI::IsMember({"nested", "support"}));
  adversary->add_option("--learner", learner, "Learner name")->capture_default_str();
  adversary->add_option("--horizon", horizon, "Number of strings presented")->capture_default_str()->check(
      CLI::PositiveNumber);
  adversary->add_option("--max-k", max_k, "Largest finite member of the nested family (default horizon + 1)");
  adversary->add_option("--out", out_path, "Write the report here");
  adversary->add_option("--trace", trace_path, "Write the step-by-step trace CSV here");

  auto* problang = app.add_subcommand("problang-verify", "Check the alternating probabilistic pair");
  problang->add_option("--max-n", max_n, "Truncation length")->capture_default_str()->check(CLI::PositiveNumber);
  problang->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
  problang->add_option("--trials", trials, "Monte Carlo trials per sample size")->capture_default_str()->check(
      CLI::PositiveNumber);
  problang->add_option("--out", out_path, "Write the verification document here");
  problang->add_option("--csv", csv_path, "Write the accuracy grid here");

  auto* growth = app.add_subcommand("growth", "Hypothesis-space lower bounds and exponential fit");
  growth->add_option("--assets", assets_path, "Asset CSV")->required()->check(CLI::ExistingFile);
  growth->add_option("--region-map", region_map_path, "Organization to region document")->check(CLI::ExistingFile);
  growth->add_option("--k", k, "Datasets per fine-tune, 1 to 3")->capture_default_str()->check(CLI::Range(1, 3));
  growth->add_option("--window", window, "Fit window")->capture_default_str()->check(kWindowCheck);
  growth->add_flag("--strict-access,!--no-strict-access", strict_access,
                   "Count unknown access as closed (default on)");
  growth->add_option("--out", out_path, "Write the series CSV here");
  growth->add_option("--svg", svg_path, "Write the chart here");
  growth->add_option("--fits", fits_path, "Write the fit summary CSV here");

  auto* compute = app.add_subcommand("compute", "Brute-force inference cost");
  auto* preset_opt = compute->add_option("--preset", preset, "paper-2025-single-item, paper-daily-sweep or paper-national-annual");
  auto* params_opt = compute->add_option("--params", custom.params_total, "Total parameters");
  compute->add_option("--tokens", custom.tokens, "Tokens processed")->needs(params_opt);
  compute->add_option("--flops-per-param-token", custom.flops_per_param_token, "FLOPs per parameter per token")->capture_default_str();
  compute->add_option("--machine-flops", custom.machine_flops_per_sec, "Machine FLOP/s")->capture_default_str();
  compute->add_option("--bytes-per-token", custom.bytes_per_token, "Bytes streamed per token")->capture_default_str();
  compute->add_option("--io-rate", custom.io_bytes_per_sec, "Streaming bytes per second")->capture_default_str();
  preset_opt->excludes(params_opt);
  compute->add_option("--out", out_path, "Write the scenario table CSV here");
  compute->add_option("--report", report_path, "Write the text report here");

  auto* report_all = app.add_subcommand("report-all", "Every table and chart from one asset snapshot");
  report_all->add_option("--assets", assets_path, "Asset CSV")->required()->check(CLI::ExistingFile);
  report_all->add_option("--region-map", region_map_path, "Organization to region document")->check(
      CLI::ExistingFile);
  report_all->add_option("--window", window, "Fit window")->capture_default_str()->check(kWindowCheck);
  report_all->add_flag("--strict-access,!--no-strict-access", strict_access,
                       "Count unknown access as closed (default on)");
  report_all->add_option("--out-dir", out_dir, "Directory for every artifact")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  ArtifactsPtr a;
  if (telltale->parsed()) {
    Run run("telltale", {{"family", family_path}});
    run.add_input("family", family_path);
    FamilyPtr f;
    if (auto s = attrib_family_load(family_path.c_str(), &f.p); s != ATTRIB_OK) return Run::fail(s);
    auto s = attrib_telltale_run(f.p, &a.p);
    return run.finish(s, a.p, {{"telltale.json", out_path}}, "telltale.json");
  }
  if (simulate->parsed()) {
    Run run("simulate", {{"family", family_path},
                         {"target", target},
                         {"learner", learner},
                         {"horizon", horizon},
                         {"cumulative", cumulative}});
    run.add_input("family", family_path);
    FamilyPtr f;
    if (auto s = attrib_family_load(family_path.c_str(), &f.p); s != ATTRIB_OK) return Run::fail(s);
    auto s = attrib_simulate(f.p, target.c_str(), learner.c_str(), horizon, cumulative ? 1 : 0, &a.p);
    return run.finish(s, a.p, {{"report.json", out_path}, {"trace.csv", trace_path}}, "report.json");
  }
  if (adversary->parsed()) {
    Run run("adversary", {{"mode", mode}, {"learner", learner}, {"horizon", horizon}, {"max_k", max_k}});
    auto s = attrib_adversary(mode.c_str(), learner.c_str(), horizon, max_k, &a.p);
    return run.finish(s, a.p, {{"report.json", out_path}, {"trace.csv", trace_path}}, "report.json");
  }
  if (problang->parsed()) {
    Run run("problang-verify", {{"max_n", max_n}, {"seed", seed}, {"trials", trials}});
    auto s = attrib_problang_verify(max_n, seed, trials, &a.p);
    return run.finish(s, a.p, {{"problang.json", out_path}, {"accuracy.csv", csv_path}}, "problang.json");
  }
  if (growth->parsed() || report_all->parsed()) {
    const bool all = report_all->parsed();
    nlohmann::json config{{"assets", assets_path},
                          {"region_map", region_map_path.empty() ? nlohmann::json(nullptr) : nlohmann::json(region_map_path)},
                          {"window", window},
                          {"strict_access", strict_access}};
    if (!all) config["k"] = k;
    Run run(all ? "report-all" : "growth", config);
    run.add_input("assets", assets_path);
    if (!region_map_path.empty()) run.add_input("region_map", region_map_path);
    SnapshotPtr snap;
    if (auto s = attrib_snapshot_ingest(assets_path.c_str(), region_map_path.empty() ? nullptr : region_map_path.c_str(),
                                        &snap.p);
        s != ATTRIB_OK) {
      return Run::fail(s);
    }
    size_t warnings = 0;
    attrib_snapshot_counts(snap.p, nullptr, nullptr, &warnings);
    if (warnings) std::cerr << warnings << " ingest warnings\n";
    if (!all) {
      auto s = attrib_growth_run(snap.p, k, window.c_str(), strict_access ? 1 : 0, &a.p);
      return run.finish(s, a.p, {{"growth.csv", out_path}, {"growth.svg", svg_path}, {"fits.csv", fits_path}},
                        "growth.csv");
    }
    auto s = attrib_report_all(snap.p, window.c_str(), strict_access ? 1 : 0, &a.p);
    if (s != ATTRIB_OK && s != ATTRIB_E_CHECK_FAILED) return Run::fail(s);
    std::vector<std::pair<std::string, std::string>> files;
    for (size_t i = 0; i < attrib_artifacts_count(a.p); ++i) {
      std::string name = attrib_artifacts_name(a.p, i);
      if (name != "summary.txt") files.emplace_back(name, (fs::path(out_dir) / name).string());
    }
    return run.finish(s, a.p, files, "summary.txt");
  }
  if (compute->parsed()) {
    if (preset.empty() && params_opt->count() == 0) {
      std::cerr << "compute needs --preset or --params with --tokens\n";
      return kUsage;
    }
    nlohmann::json config;
    if (!preset.empty()) {
      config = {{"preset", preset}};
    } else {
      config = {{"params_total", custom.params_total},
                {"tokens", custom.tokens},
                {"flops_per_param_token", custom.flops_per_param_token},
                {"machine_flops_per_sec", custom.machine_flops_per_sec},
                {"bytes_per_token", custom.bytes_per_token},
                {"io_bytes_per_sec", custom.io_bytes_per_sec}};
    }
    Run run("compute", config);
    auto s = preset.empty() ? attrib_compute_custom(&custom, &a.p) : attrib_compute_preset(preset.c_str(), &a.p);
    return run.finish(s, a.p, {{"compute.csv", out_path}, {"compute.txt", report_path}}, "compute.txt");
  }
  return kUsage;
}
