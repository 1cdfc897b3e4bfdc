#include "attrib/ecosystem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>

#include "attrib/csv.hpp"
#include "attrib/errors.hpp"

namespace attrib {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool has_any(const std::string& haystack, std::initializer_list<std::string_view> needles) {
  return std::any_of(needles.begin(), needles.end(),
                     [&](std::string_view n) { return haystack.find(n) != std::string::npos; });
}

constexpr YearMonth kEarliest{1990, 1};
constexpr YearMonth kLatest{2100, 1};

struct ParsedDate {
  YearMonth value;
  bool year_only = false;
};

std::optional<ParsedDate> parse_created(std::string_view raw) {
  static const std::regex pattern(R"(^\s*(\d{4})(?:[-/](\d{1,2}))?(?:[-/](\d{1,2}))?)");
  std::string text(raw);
  std::smatch m;
  if (!std::regex_search(text, m, pattern)) return std::nullopt;
  ParsedDate d;
  d.value.year = std::stoi(m[1].str());
  if (m[2].matched) {
    d.value.month = std::stoi(m[2].str());
    if (d.value.month < 1 || d.value.month > 12) return std::nullopt;
  } else {
    d.value.month = 1;
    d.year_only = true;
  }
  return d;
}

AssetType classify_type(std::string_view raw, bool& recognized) {
  auto t = lower(trim(raw));
  recognized = true;
  if (t == "model") return AssetType::Model;
  if (t == "dataset") return AssetType::Dataset;
  if (t == "application" || t == "other") return AssetType::Other;
  recognized = false;
  return AssetType::Other;
}

}  // namespace

// ---------------------------------------------------------------- YearMonth

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

YearMonth YearMonth::parse(std::string_view text) {
  int y = 0;
  int m = 0;
  auto t = trim(text);
  if (t.size() != 7 || t[4] != '-') throw InputError("expected YYYY-MM, got '" + std::string(text) + "'");
  auto r1 = std::from_chars(t.data(), t.data() + 4, y);
  auto r2 = std::from_chars(t.data() + 5, t.data() + 7, m);
  if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != t.data() + 4 || r2.ptr != t.data() + 7 || m < 1 ||
      m > 12) {
    throw InputError("expected YYYY-MM, got '" + std::string(text) + "'");
  }
  return {y, m};
}

// ------------------------------------------------------------- vocabularies

std::string to_string(AssetType v) {
  switch (v) {
    case AssetType::Model: return "model";
    case AssetType::Dataset: return "dataset";
    case AssetType::Other: return "other";
  }
  return "other";
}

std::string to_string(Access v) {
  switch (v) {
    case Access::Open: return "open";
    case Access::ClosedOrRestricted: return "closed_or_restricted";
    case Access::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Modality v) {
  switch (v) {
    case Modality::Text: return "text";
    case Modality::Vision: return "vision";
    case Modality::Multimodal: return "multimodal";
    case Modality::Audio: return "audio";
    case Modality::Other: return "other";
    case Modality::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Region v) {
  switch (v) {
    case Region::NorthAmerica: return "north_america";
    case Region::Europe: return "europe";
    case Region::Asia: return "asia";
    case Region::Other: return "other";
  }
  return "other";
}

Region region_from_string(std::string_view s) {
  auto t = lower(trim(s));
  if (t == "north_america" || t == "north america") return Region::NorthAmerica;
  if (t == "europe") return Region::Europe;
  if (t == "asia") return Region::Asia;
  if (t == "other") return Region::Other;
  throw InputError("unknown region '" + std::string(s) + "'");
}

namespace {

template <class E>
E enum_from_string(std::string_view s, std::initializer_list<E> values) {
  for (E v : values) {
    if (to_string(v) == s) return v;
  }
  throw ParseError("unknown enum value '" + std::string(s) + "'");
}

}  // namespace

// ------------------------------------------------------------ classifiers

std::optional<double> parse_param_count(std::string_view text) {
  static const std::regex pattern(R"((\d+(?:\.\d+)?)\s*([KkMmBbTt])(?![A-Za-z]))");
  std::string s(text);
  std::smatch m;
  if (!std::regex_search(s, m, pattern)) return std::nullopt;
  double value = std::stod(m[1].str());
  switch (std::tolower(static_cast<unsigned char>(m[2].str()[0]))) {
    case 'k': value *= 1e3; break;
    case 'm': value *= 1e6; break;
    case 'b': value *= 1e9; break;
    case 't': value *= 1e12; break;
  }
  if (!(value > 0) || !std::isfinite(value)) return std::nullopt;
  return value;
}

Access classify_access(std::string_view raw) {
  auto t = lower(trim(raw));
  if (t == "open") return Access::Open;
  if (t == "closed" || t == "limited" || t == "restricted") return Access::ClosedOrRestricted;
  return Access::Unknown;
}

Modality classify_modality(std::string_view raw) {
  auto t = lower(trim(raw));
  if (t.empty() || t == "unknown") return Modality::Unknown;
  const bool text = has_any(t, {"text", "code", "language"});
  const bool vision = has_any(t, {"image", "vision", "video", "visual"});
  const bool audio = has_any(t, {"audio", "speech", "music", "sound"});
  if (vision && (text || audio)) return Modality::Multimodal;
  if (audio) return Modality::Audio;
  if (vision) return Modality::Vision;
  if (text) return Modality::Text;
  if (has_any(t, {"protein", "molecul", "dna", "genom", "tabular", "action", "robot", "3d", "time series", "graph"})) {
    return Modality::Other;
  }
  return Modality::Unknown;
}

void RegionMap::add(std::string organization, Region region) {
  entries_[lower(trim(organization))] = region;
}

std::optional<Region> RegionMap::find(std::string_view organization) const {
  auto it = entries_.find(lower(trim(organization)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<Region> lookup_region(std::string_view organization, const RegionMap& regions) {
  if (auto r = regions.find(organization)) return r;
  std::size_t begin = 0;
  const std::string org(organization);
  while (begin <= org.size()) {
    auto end = org.find_first_of(",;/&", begin);
    if (end == std::string::npos) end = org.size();
    if (auto r = regions.find(std::string_view(org).substr(begin, end - begin))) return r;
    begin = end + 1;
  }
  return std::nullopt;
}

Region classify_region(std::string_view organization, const RegionMap& regions) {
  return lookup_region(organization, regions).value_or(Region::Other);
}

RegionMap default_region_map() {
  RegionMap map;
  for (const char* org :
       {"OpenAI", "Google", "Google Research", "Google Brain", "Google DeepMind", "Meta", "Meta AI", "Facebook",
        "Microsoft", "Microsoft Research", "Anthropic", "NVIDIA", "Amazon", "Apple", "IBM", "Salesforce",
        "Allen Institute for AI", "AI2", "EleutherAI", "Cohere", "Together", "Databricks", "MosaicML", "Stanford",
        "Stanford University", "UC Berkeley", "Berkeley", "Carnegie Mellon University", "MIT", "xAI",
        "Inflection AI", "Adept", "Character.AI", "Hugging Face", "Midjourney", "Runway", "Snowflake", "Intel",
        "Cerebras", "Replit", "Perplexity", "Nous Research", "Writer", "Reka", "University of Washington",
        "Princeton University", "Harvard University", "LMSYS", "Abacus AI"}) {
    map.add(org, Region::NorthAmerica);
  }
  for (const char* org : {"DeepMind", "Mistral AI", "Aleph Alpha", "Stability AI", "LAION", "BigScience",
                          "Hugging Face Europe", "University of Oxford", "University of Cambridge", "ETH Zurich",
                          "EPFL", "Helsinki-NLP", "Yandex", "Sber", "SberDevices", "Kyutai", "LightOn",
                          "Black Forest Labs", "Synthesia", "Poolside", "Fraunhofer"}) {
    map.add(org, Region::Europe);
  }
  for (const char* org :
       {"Alibaba", "Alibaba Cloud", "Qwen", "Baidu", "Tencent", "Huawei", "ByteDance", "Tsinghua University",
        "Tsinghua", "Zhipu AI", "DeepSeek", "Baichuan", "Baichuan Inc.", "Moonshot AI", "01.AI", "01 AI",
        "Shanghai AI Laboratory", "Shanghai AI Lab", "Beijing Academy of Artificial Intelligence", "BAAI", "Naver",
        "LG AI Research", "Kakao Brain", "Samsung", "SenseTime", "iFlytek", "Rakuten", "Sakana AI", "Peking University",
        "Fudan University", "Zhejiang University", "MiniMax", "StepFun", "Xiaomi", "Upstage", "Sarvam AI",
        "Rinna", "Preferred Networks", "Inspur", "Megvii", "JD", "Meituan", "Kuaishou", "Ant Group"}) {
    map.add(org, Region::Asia);
  }
  for (const char* org : {"Technology Innovation Institute", "TII", "AI21 Labs", "G42", "Inception"}) {
    map.add(org, Region::Other);
  }
  return map;
}

RegionMap parse_region_map(const nlohmann::json& doc) {
  if (!doc.is_array()) throw ValidationError("region map must be an array of {organization, region}");
  RegionMap map;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("organization") || !entry.contains("region") ||
        !entry["organization"].is_string() || !entry["region"].is_string()) {
      throw ValidationError("region map entries need string 'organization' and 'region'");
    }
    try {
      map.add(entry["organization"].get<std::string>(), region_from_string(entry["region"].get<std::string>()));
    } catch (const InputError& e) {
      throw ValidationError(e.what());
    }
  }
  return map;
}

RegionMap load_region_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open region map '" + path + "'");
  try {
    return parse_region_map(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("region map '" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------- ingestion

std::size_t Snapshot::skipped_rows() const {
  return static_cast<std::size_t>(std::count_if(warnings.begin(), warnings.end(), [](const auto& w) { return w.skipped; }));
}

Snapshot ingest_csv(std::istream& in, const RegionMap& regions, const IngestOptions& options) {
  auto rows = csv::read(in);
  if (rows.empty()) throw ParseError("asset csv has no header row");
  const auto& header = rows.front();
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lower(trim(header[i])) == lower(name)) return i;
    }
    throw ParseError("asset csv is missing mandatory column '" + name + "'");
  };
  const auto& c = options.columns;
  const std::size_t col_name = column(c.name), col_type = column(c.type), col_org = column(c.organization),
                    col_created = column(c.created), col_access = column(c.access), col_size = column(c.size),
                    col_modality = column(c.modality);

  Snapshot snap;
  snap.label = options.label;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t row_no = r;
    ++snap.rows_read;
    auto cell = [&](std::size_t i) -> std::string { return i < row.size() ? std::string(trim(row[i])) : std::string(); };
    auto warn = [&](const char* field, std::string message, bool skipped) {
      snap.warnings.push_back({row_no, field, std::move(message), skipped});
    };

    AssetRecord rec;
    rec.name = cell(col_name);
    bool recognized = false;
    rec.type = classify_type(cell(col_type), recognized);
    if (!recognized) {
      warn("type", "unrecognized asset type '" + cell(col_type) + "'; row skipped", true);
      continue;
    }
    auto date = parse_created(cell(col_created));
    if (!date) {
      warn("created_date", "unparseable date '" + cell(col_created) + "'; row skipped", true);
      continue;
    }
    if (date->value < kEarliest || date->value > kLatest) {
      warn("created_date", "date " + date->value.str() + " outside [1990-01, 2100-01]; row skipped", true);
      continue;
    }
    rec.created = date->value;
    if (date->year_only) warn("created_date", "year-only date '" + cell(col_created) + "' defaulted to January", false);

    rec.organization = cell(col_org);
    rec.access = classify_access(cell(col_access));
    rec.raw_size = cell(col_size);
    rec.modality = classify_modality(cell(col_modality));
    auto region = lookup_region(rec.organization, regions);
    rec.region = region.value_or(Region::Other);

    if (rec.type == AssetType::Model) {
      rec.params = parse_param_count(rec.raw_size);
      if (rec.access == Access::Unknown) warn("access", "access '" + cell(col_access) + "' not recognized", false);
      if (!rec.params) warn("size", "no parameter count in '" + rec.raw_size + "'", false);
      if (rec.modality == Modality::Unknown) warn("modality", "modality '" + cell(col_modality) + "' not recognized", false);
      if (!region) warn("organization", "organization '" + rec.organization + "' unmapped; region other", false);
      snap.models.push_back(std::move(rec));
    } else if (rec.type == AssetType::Dataset) {
      snap.datasets.push_back(std::move(rec));
    } else {
      snap.others.push_back(std::move(rec));
    }
  }
  return snap;
}

Snapshot ingest_csv(const std::string& path, const RegionMap& regions, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open asset csv '" + path + "'");
  return ingest_csv(in, regions, options);
}

Snapshot impute_params(const Snapshot& snapshot) {
  Snapshot out = snapshot;
  double sum = 0;
  std::size_t known = 0;
  for (const auto& m : snapshot.models) {
    if (m.params) {
      sum += *m.params;
      ++known;
    }
  }
  if (known == snapshot.models.size()) return out;
  if (known == 0) throw ValidationError("cannot impute parameter counts: no model has a known size");
  const double mean = sum / static_cast<double>(known);
  out.imputation_mean = mean;
  for (auto& m : out.models) {
    if (!m.params) {
      m.params = mean;
      ++out.imputed_count;
    }
  }
  return out;
}

// ------------------------------------------------------------ serialization

namespace {

nlohmann::json record_to_json(const AssetRecord& r) {
  return {{"name", r.name},
          {"type", to_string(r.type)},
          {"organization", r.organization},
          {"created", r.created.str()},
          {"access", to_string(r.access)},
          {"raw_size", r.raw_size},
          {"params", r.params ? nlohmann::json(*r.params) : nlohmann::json(nullptr)},
          {"modality", to_string(r.modality)},
          {"region", to_string(r.region)}};
}

AssetRecord record_from_json(const nlohmann::json& j) {
  AssetRecord r;
  r.name = j.at("name").get<std::string>();
  r.type = enum_from_string(j.at("type").get<std::string>(), {AssetType::Model, AssetType::Dataset, AssetType::Other});
  r.organization = j.at("organization").get<std::string>();
  r.created = YearMonth::parse(j.at("created").get<std::string>());
  r.access = enum_from_string(j.at("access").get<std::string>(),
                              {Access::Open, Access::ClosedOrRestricted, Access::Unknown});
  r.raw_size = j.at("raw_size").get<std::string>();
  if (!j.at("params").is_null()) r.params = j.at("params").get<double>();
  r.modality = enum_from_string(j.at("modality").get<std::string>(),
                                {Modality::Text, Modality::Vision, Modality::Multimodal, Modality::Audio,
                                 Modality::Other, Modality::Unknown});
  r.region = enum_from_string(j.at("region").get<std::string>(),
                              {Region::NorthAmerica, Region::Europe, Region::Asia, Region::Other});
  return r;
}

}  // namespace

nlohmann::json snapshot_to_json(const Snapshot& s) {
  auto records = [](const std::vector<AssetRecord>& v) {
    auto a = nlohmann::json::array();
    for (const auto& r : v) a.push_back(record_to_json(r));
    return a;
  };
  auto warnings = nlohmann::json::array();
  for (const auto& w : s.warnings) {
    warnings.push_back({{"row", w.row}, {"field", w.field}, {"message", w.message}, {"skipped", w.skipped}});
  }
  return {{"label", s.label},
          {"rows_read", s.rows_read},
          {"imputed_count", s.imputed_count},
          {"imputation_mean", s.imputation_mean ? nlohmann::json(*s.imputation_mean) : nlohmann::json(nullptr)},
          {"models", records(s.models)},
          {"datasets", records(s.datasets)},
          {"others", records(s.others)},
          {"warnings", std::move(warnings)}};
}

Snapshot snapshot_from_json(const nlohmann::json& doc) {
  try {
    Snapshot s;
    s.label = doc.at("label").get<std::string>();
    s.rows_read = doc.at("rows_read").get<std::size_t>();
    s.imputed_count = doc.at("imputed_count").get<std::size_t>();
    if (!doc.at("imputation_mean").is_null()) s.imputation_mean = doc.at("imputation_mean").get<double>();
    for (const auto& r : doc.at("models")) s.models.push_back(record_from_json(r));
    for (const auto& r : doc.at("datasets")) s.datasets.push_back(record_from_json(r));
    for (const auto& r : doc.at("others")) s.others.push_back(record_from_json(r));
    for (const auto& w : doc.at("warnings")) {
      s.warnings.push_back({w.at("row").get<std::size_t>(), w.at("field").get<std::string>(),
                            w.at("message").get<std::string>(), w.at("skipped").get<bool>()});
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed snapshot document: ") + e.what());
  } catch (const InputError& e) {
    throw ParseError(std::string("malformed snapshot document: ") + e.what());
  }
}

// ------------------------------------------------------------------ series

CumulativeSeries cumulative_series(const Snapshot& snapshot, YearMonth start, YearMonth end, AccessMode mode) {
  if (end < start) throw InputError("series end precedes start");
  CumulativeSeries s;
  const int first = start.ordinal();
  const int count = end.ordinal() - first + 1;
  for (int i = 0; i < count; ++i) s.grid.push_back(YearMonth::from_ordinal(first + i));
  std::vector<std::uint64_t> closed(count), open(count), data(count), unknown(count);
  std::vector<double> params(count);
  std::uint64_t closed0 = 0, open0 = 0, data0 = 0, unknown0 = 0;
  double params0 = 0;
  // Per-month increments; assets dated before the grid fold into the base.
  auto slot = [&](YearMonth t) -> std::optional<std::size_t> {
    if (t > end) return std::nullopt;
    if (t < start) return count;  // sentinel: before grid
    return static_cast<std::size_t>(t.ordinal() - first);
  };
  for (const auto& m : snapshot.models) {
    auto i = slot(m.created);
    if (!i) continue;
    Access a = m.access;
    if (a == Access::Unknown && mode == AccessMode::Strict) a = Access::ClosedOrRestricted;
    const double p = m.params.value_or(0.0);
    if (*i == static_cast<std::size_t>(count)) {
      (a == Access::Open ? open0 : a == Access::ClosedOrRestricted ? closed0 : unknown0) += 1;
      params0 += p;
    } else {
      (a == Access::Open ? open : a == Access::ClosedOrRestricted ? closed : unknown)[*i] += 1;
      params[*i] += p;
    }
  }
  for (const auto& d : snapshot.datasets) {
    auto i = slot(d.created);
    if (!i) continue;
    if (*i == static_cast<std::size_t>(count)) {
      ++data0;
    } else {
      ++data[*i];
    }
  }
  auto accumulate = [&](std::vector<std::uint64_t>& inc, std::uint64_t base) {
    std::vector<std::uint64_t> out(count);
    std::uint64_t run = base;
    for (int i = 0; i < count; ++i) out[i] = run += inc[i];
    return out;
  };
  s.closed = accumulate(closed, closed0);
  s.open = accumulate(open, open0);
  s.datasets = accumulate(data, data0);
  s.unknown_access = accumulate(unknown, unknown0);
  s.params_total.resize(count);
  double run = params0;
  for (int i = 0; i < count; ++i) s.params_total[i] = run += params[i];
  return s;
}

std::optional<double> params_at_year(const CumulativeSeries& series, int year) {
  std::optional<double> value;
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    if (series.grid[i].year == year) value = series.params_total[i];
  }
  return value;
}

}  // namespace attrib
