#include "attrib/attrib.h"

#include <memory>
#include <string>
#include <tuple>

#include "attrib/ecosystem.hpp"
#include "attrib/errors.hpp"
#include "attrib/formal_lang.hpp"
#include "attrib/reports.hpp"

struct attrib_family {
  attrib::LanguageFamily family;
};

struct attrib_snapshot {
  attrib::Snapshot snapshot;
};

struct attrib_artifacts {
  attrib::RunOutput output;
};

namespace {

thread_local std::string last_error;

template <class F>
attrib_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const attrib::InputError& e) {
    last_error = e.what();
    return ATTRIB_E_INPUT;
  } catch (const attrib::ParseError& e) {
    last_error = e.what();
    return ATTRIB_E_PARSE;
  } catch (const attrib::ValidationError& e) {
    last_error = e.what();
    return ATTRIB_E_VALIDATION;
  } catch (const nlohmann::json::parse_error& e) {
    last_error = e.what();
    return ATTRIB_E_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ATTRIB_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ATTRIB_E_INTERNAL;
  }
}

attrib_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return ATTRIB_E_INPUT;
}

attrib_status deliver(attrib::RunOutput output, attrib_artifacts** out) {
  const bool passed = output.passed;
  *out = new attrib_artifacts{std::move(output)};
  if (!passed) {
    last_error = "a verified property does not hold";
    return ATTRIB_E_CHECK_FAILED;
  }
  return ATTRIB_OK;
}

attrib::GrowthConfig growth_config(int k, const char* window, int strict_access) {
  attrib::GrowthConfig config;
  config.k = k;
  if (window) std::tie(config.start, config.end) = attrib::parse_window(window);
  config.mode = strict_access ? attrib::AccessMode::Strict : attrib::AccessMode::Separate;
  return config;
}

}  // namespace

extern "C" {

const char* attrib_version(void) { return ATTRIB_VERSION_STRING; }

const char* attrib_last_error(void) { return last_error.c_str(); }

const char* attrib_status_name(attrib_status status) {
  switch (status) {
    case ATTRIB_OK: return "ok";
    case ATTRIB_E_INPUT: return "input error";
    case ATTRIB_E_PARSE: return "parse error";
    case ATTRIB_E_VALIDATION: return "validation error";
    case ATTRIB_E_IO: return "i/o error";
    case ATTRIB_E_INTERNAL: return "internal error";
    case ATTRIB_E_CHECK_FAILED: return "check failed";
  }
  return "unknown status";
}

attrib_status attrib_family_load(const char* path, attrib_family** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] {
    *out = new attrib_family{attrib::load_family(path)};
    return ATTRIB_OK;
  });
}

attrib_status attrib_family_parse(const char* json, attrib_family** out) {
  if (!json || !out) return null_argument("json/out");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw attrib::ParseError(std::string("family document is not valid JSON: ") + e.what());
    }
    *out = new attrib_family{attrib::parse_family(doc)};
    return ATTRIB_OK;
  });
}

attrib_status attrib_family_unary_nested(size_t max_k, attrib_family** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new attrib_family{attrib::build_unary_nested_family(max_k)};
    return ATTRIB_OK;
  });
}

void attrib_family_destroy(attrib_family* family) { delete family; }

size_t attrib_family_size(const attrib_family* family) { return family ? family->family.size() : 0; }

attrib_status attrib_family_find(const attrib_family* family, const char* name, size_t* index) {
  if (!family || !name || !index) return null_argument("family/name/index");
  return guarded([&] {
    auto i = family->family.index_of(name);
    if (!i) throw attrib::InputError(std::string("no language named '") + name + "'");
    *index = *i;
    return ATTRIB_OK;
  });
}

attrib_status attrib_family_contains(const attrib_family* family, size_t index, const char* s, int* result) {
  if (!family || !s || !result) return null_argument("family/s/result");
  return guarded([&] {
    if (index >= family->family.size()) throw attrib::InputError("language index out of range");
    *result = family->family[index].contains(s) ? 1 : 0;
    return ATTRIB_OK;
  });
}

attrib_status attrib_telltale_run(const attrib_family* family, attrib_artifacts** out) {
  if (!family || !out) return null_argument("family/out");
  return guarded([&] { return deliver(attrib::run_telltale(family->family), out); });
}

attrib_status attrib_simulate(const attrib_family* family, const char* target, const char* learner, size_t horizon,
                              int cumulative_schedule, attrib_artifacts** out) {
  if (!family || !target || !learner || !out) return null_argument("family/target/learner/out");
  return guarded([&] {
    return deliver(attrib::run_simulate(family->family, target, learner, horizon, cumulative_schedule != 0), out);
  });
}

attrib_status attrib_adversary(const char* mode, const char* learner, size_t horizon, size_t max_k,
                               attrib_artifacts** out) {
  if (!mode || !learner || !out) return null_argument("mode/learner/out");
  return guarded([&] { return deliver(attrib::run_adversary(mode, learner, horizon, max_k), out); });
}

attrib_status attrib_problang_verify(size_t max_n, uint64_t seed, size_t trials, attrib_artifacts** out) {
  if (!out) return null_argument("out");
  return guarded([&] { return deliver(attrib::run_problang(max_n, seed, trials), out); });
}

attrib_status attrib_snapshot_ingest(const char* assets_path, const char* region_map_path, attrib_snapshot** out) {
  if (!assets_path || !out) return null_argument("assets_path/out");
  return guarded([&] {
    auto regions = region_map_path ? attrib::load_region_map(region_map_path) : attrib::default_region_map();
    attrib::IngestOptions options;
    options.label = assets_path;
    *out = new attrib_snapshot{attrib::ingest_csv(std::string(assets_path), regions, options)};
    return ATTRIB_OK;
  });
}

void attrib_snapshot_destroy(attrib_snapshot* snapshot) { delete snapshot; }

attrib_status attrib_snapshot_counts(const attrib_snapshot* snapshot, size_t* models, size_t* datasets,
                                     size_t* warnings) {
  if (!snapshot) return null_argument("snapshot");
  if (models) *models = snapshot->snapshot.models.size();
  if (datasets) *datasets = snapshot->snapshot.datasets.size();
  if (warnings) *warnings = snapshot->snapshot.warnings.size();
  return ATTRIB_OK;
}

attrib_status attrib_growth_run(const attrib_snapshot* snapshot, int k, const char* window, int strict_access,
                                attrib_artifacts** out) {
  if (!snapshot || !out) return null_argument("snapshot/out");
  return guarded([&] {
    return deliver(attrib::run_growth(snapshot->snapshot, growth_config(k, window, strict_access)), out);
  });
}

attrib_status attrib_report_all(const attrib_snapshot* snapshot, const char* window, int strict_access,
                                attrib_artifacts** out) {
  if (!snapshot || !out) return null_argument("snapshot/out");
  return guarded([&] {
    return deliver(attrib::run_report_all(snapshot->snapshot, growth_config(1, window, strict_access)), out);
  });
}

void attrib_compute_defaults(attrib_compute_params* params) {
  if (!params) return;
  const attrib::ComputeScenario s;
  *params = {s.params_total, s.tokens, s.flops_per_param_token, s.machine_flops_per_sec, s.bytes_per_token,
             s.io_bytes_per_sec};
}

attrib_status attrib_compute_preset(const char* name, attrib_artifacts** out) {
  if (!name || !out) return null_argument("name/out");
  return guarded([&] { return deliver(attrib::run_compute(attrib::preset(name)), out); });
}

attrib_status attrib_compute_custom(const attrib_compute_params* p, attrib_artifacts** out) {
  if (!p || !out) return null_argument("params/out");
  return guarded([&] {
    attrib::ComputeScenario s;
    s.params_total = p->params_total;
    s.tokens = p->tokens;
    s.flops_per_param_token = p->flops_per_param_token;
    s.machine_flops_per_sec = p->machine_flops_per_sec;
    s.bytes_per_token = p->bytes_per_token;
    s.io_bytes_per_sec = p->io_bytes_per_sec;
    return deliver(attrib::run_compute(s), out);
  });
}

size_t attrib_artifacts_count(const attrib_artifacts* a) { return a ? a->output.artifacts.size() : 0; }

const char* attrib_artifacts_name(const attrib_artifacts* a, size_t i) {
  if (!a || i >= a->output.artifacts.size()) return nullptr;
  return a->output.artifacts[i].name.c_str();
}

const char* attrib_artifacts_content(const attrib_artifacts* a, size_t i, size_t* length) {
  if (!a || i >= a->output.artifacts.size()) return nullptr;
  const auto& c = a->output.artifacts[i].content;
  if (length) *length = c.size();
  return c.c_str();
}

size_t attrib_artifacts_find(const attrib_artifacts* a, const char* name) {
  if (!a || !name) return static_cast<size_t>(-1);
  for (size_t i = 0; i < a->output.artifacts.size(); ++i) {
    if (a->output.artifacts[i].name == name) return i;
  }
  return static_cast<size_t>(-1);
}

attrib_status attrib_artifacts_stamp(attrib_artifacts* a, const char* provenance_json) {
  if (!a || !provenance_json) return null_argument("artifacts/provenance_json");
  return guarded([&] {
    nlohmann::json p;
    try {
      p = nlohmann::json::parse(provenance_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw attrib::InputError(std::string("provenance is not valid JSON: ") + e.what());
    }
    attrib::stamp(a->output, p);
    return ATTRIB_OK;
  });
}

void attrib_artifacts_destroy(attrib_artifacts* a) { delete a; }

uint64_t attrib_fnv1a64(const void* data, size_t length) {
  if (!data) return attrib::fnv1a64({});
  return attrib::fnv1a64(std::string_view(static_cast<const char*>(data), length));
}

}  // extern "C"
