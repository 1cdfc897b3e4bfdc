#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace attrib {

/// Calendar month; the time grid of every ecosystem series.
struct YearMonth {
  int year = 1970;
  int month = 1;

  auto operator<=>(const YearMonth&) const = default;

  int ordinal() const { return year * 12 + (month - 1); }
  static YearMonth from_ordinal(int ordinal) { return {ordinal / 12, ordinal % 12 + 1}; }
  YearMonth next() const { return from_ordinal(ordinal() + 1); }
  /// Fractional years from `origin` (months / 12).
  double years_since(YearMonth origin) const { return (ordinal() - origin.ordinal()) / 12.0; }
  std::string str() const;
  /// "YYYY-MM"; throws InputError otherwise.
  static YearMonth parse(std::string_view text);
};

enum class AssetType { Model, Dataset, Other };
enum class Access { Open, ClosedOrRestricted, Unknown };
enum class Modality { Text, Vision, Multimodal, Audio, Other, Unknown };
enum class Region { NorthAmerica, Europe, Asia, Other };

std::string to_string(AssetType v);
std::string to_string(Access v);
std::string to_string(Modality v);
std::string to_string(Region v);
Region region_from_string(std::string_view s);

struct AssetRecord {
  std::string name;
  AssetType type = AssetType::Other;
  std::string organization;
  YearMonth created;
  Access access = Access::Unknown;
  std::string raw_size;
  std::optional<double> params;
  Modality modality = Modality::Unknown;
  Region region = Region::Other;

  bool operator==(const AssetRecord&) const = default;
};

struct IngestWarning {
  std::size_t row = 0;  // 1-based data row (header excluded)
  std::string field;
  std::string message;
  bool skipped = false;

  bool operator==(const IngestWarning&) const = default;
};

struct Snapshot {
  std::string label;
  std::vector<AssetRecord> models;
  std::vector<AssetRecord> datasets;
  std::vector<AssetRecord> others;
  std::vector<IngestWarning> warnings;
  std::size_t rows_read = 0;
  std::size_t imputed_count = 0;
  std::optional<double> imputation_mean;

  std::size_t skipped_rows() const;
  bool operator==(const Snapshot&) const = default;
};

/// Organization → region lookup, case-insensitive; unmapped organizations are Other.
class RegionMap {
 public:
  RegionMap() = default;
  void add(std::string organization, Region region);
  std::optional<Region> find(std::string_view organization) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Region, std::less<>> entries_;
};

RegionMap default_region_map();
/// Array of {organization, region}.
RegionMap parse_region_map(const nlohmann::json& doc);
RegionMap load_region_map(const std::string& path);

struct ColumnMap {
  std::string name = "name";
  std::string type = "type";
  std::string organization = "organization";
  std::string created = "created_date";
  std::string access = "access";
  std::string size = "size";
  std::string modality = "modality";
};

struct IngestOptions {
  ColumnMap columns;
  std::string label = "snapshot";
};

/// First quantity with a K/M/B/T suffix ("13B parameters" → 1.3e10).
std::optional<double> parse_param_count(std::string_view text);
Access classify_access(std::string_view raw);
Modality classify_modality(std::string_view raw);
/// Region of an organization string; tries the whole string, then each
/// comma/semicolon/slash separated part in order.
Region classify_region(std::string_view organization, const RegionMap& regions);
std::optional<Region> lookup_region(std::string_view organization, const RegionMap& regions);

Snapshot ingest_csv(std::istream& in, const RegionMap& regions, const IngestOptions& options = {});
Snapshot ingest_csv(const std::string& path, const RegionMap& regions, const IngestOptions& options = {});

/// Fills missing model sizes with the mean of known sizes. Throws
/// ValidationError when models exist but none has a known size.
Snapshot impute_params(const Snapshot& snapshot);

nlohmann::json snapshot_to_json(const Snapshot& snapshot);
Snapshot snapshot_from_json(const nlohmann::json& doc);

enum class AccessMode {
  /// Unknown access is counted as closed_or_restricted (C and O partition the models).
  Strict,
  /// Unknown access is tracked separately and counted in neither C nor O.
  Separate,
};

struct CumulativeSeries {
  std::vector<YearMonth> grid;
  std::vector<std::uint64_t> closed;
  std::vector<std::uint64_t> open;
  std::vector<std::uint64_t> datasets;
  std::vector<std::uint64_t> unknown_access;
  std::vector<double> params_total;
};

/// Counts with created <= t at each month in [start, end].
CumulativeSeries cumulative_series(const Snapshot& snapshot, YearMonth start, YearMonth end,
                                   AccessMode mode = AccessMode::Strict);

/// Cumulative parameter total at the last grid month inside `year`.
std::optional<double> params_at_year(const CumulativeSeries& series, int year);

}  // namespace attrib
