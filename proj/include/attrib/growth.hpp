#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attrib/ecosystem.hpp"

namespace attrib {

/// C + O·(1 + Σ_{j=1..k} binom(D, j)) for k in {1, 2, 3}. Throws InputError for
/// other k and ValidationError when the value does not fit in 64 bits.
std::uint64_t n_bound(std::uint64_t closed, std::uint64_t open, std::uint64_t datasets, int k);

/// Counts closed models plus (open model, dataset subset of size <= k) pairs by
/// enumeration. Requires datasets <= 15.
std::uint64_t brute_force_count(std::uint64_t closed, std::uint64_t open, std::uint64_t datasets, int k);

struct GrowthPoint {
  YearMonth t;
  std::uint64_t closed = 0;
  std::uint64_t open = 0;
  std::uint64_t datasets = 0;
  std::uint64_t n = 0;
};

std::vector<GrowthPoint> n_series(const CumulativeSeries& series, int k);

struct ExpFit {
  double b = 0;
  double ln_a = 0;
  double r2 = 0;
  std::optional<double> tau;  // absent unless b > 0
  std::size_t points_used = 0;
  std::size_t zeros_dropped = 0;
};

/// OLS of ln N on fractional years since the first point of `points`, restricted
/// to [window_start, window_end]. Needs at least 3 positive points.
ExpFit fit_exponential(const std::vector<GrowthPoint>& points, YearMonth window_start, YearMonth window_end);
/// Same fit on raw (t, y) pairs.
ExpFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y);

enum class SliceDimension { Modality, Region };

/// Per-slice N series: C and O from the models in the slice, D global.
std::map<std::string, std::vector<GrowthPoint>> slice_series(const Snapshot& snapshot, SliceDimension dimension,
                                                             YearMonth start, YearMonth end, int k = 1,
                                                             AccessMode mode = AccessMode::Strict);

/// `t,C,O,D,N_k1,N_k2,N_k3`, one row per grid month.
std::string growth_csv(const CumulativeSeries& series);

struct FitRow {
  std::string metric;
  ExpFit fit;
};

/// `metric,b,r2,tau,points_used,zeros_dropped`.
std::string fits_csv(const std::vector<FitRow>& rows);
nlohmann::json fits_json(const std::vector<FitRow>& rows);

}  // namespace attrib
