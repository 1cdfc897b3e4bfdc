#include "attrib/growth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "attrib/errors.hpp"

namespace attrib {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("hypothesis count overflows 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ValidationError("hypothesis count overflows 64 bits");
  return r;
}

std::uint64_t binom(std::uint64_t n, int j) {
  if (static_cast<std::uint64_t>(j) > n) return 0;
  // Multiplicative form; each partial product is itself a binomial, so the
  // division is exact.
  unsigned __int128 r = 1;
  for (int i = 1; i <= j; ++i) {
    r = r * (n - j + i) / i;
  }
  if (r > std::numeric_limits<std::uint64_t>::max()) throw ValidationError("hypothesis count overflows 64 bits");
  return static_cast<std::uint64_t>(r);
}

void require_k(int k) {
  if (k < 1 || k > 3) throw InputError("k must be 1, 2 or 3, got " + std::to_string(k));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::uint64_t n_bound(std::uint64_t closed, std::uint64_t open, std::uint64_t datasets, int k) {
  require_k(k);
  std::uint64_t per_open = 1;
  for (int j = 1; j <= k; ++j) per_open = checked_add(per_open, binom(datasets, j));
  return checked_add(closed, checked_mul(open, per_open));
}

std::uint64_t brute_force_count(std::uint64_t closed, std::uint64_t open, std::uint64_t datasets, int k) {
  require_k(k);
  if (datasets > 15) throw InputError("brute-force enumeration is limited to 15 datasets");
  std::set<std::pair<std::uint64_t, std::uint32_t>> items;
  // Closed models never pair with datasets; tag them apart from open ones.
  for (std::uint64_t c = 0; c < closed; ++c) items.emplace(c, 0xFFFFFFFFu);
  for (std::uint64_t o = 0; o < open; ++o) {
    for (std::uint32_t mask = 0; mask < (1u << datasets); ++mask) {
      if (std::popcount(mask) <= k) items.emplace(closed + o, mask);
    }
  }
  return items.size();
}

std::vector<GrowthPoint> n_series(const CumulativeSeries& series, int k) {
  require_k(k);
  std::vector<GrowthPoint> out;
  out.reserve(series.grid.size());
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    GrowthPoint p{series.grid[i], series.closed[i], series.open[i], series.datasets[i], 0};
    p.n = n_bound(p.closed, p.open, p.datasets, k);
    out.push_back(p);
  }
  return out;
}

ExpFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw InputError("fit inputs differ in length");
  ExpFit fit;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (y[i] > 0) {
      xs.push_back(t[i]);
      ys.push_back(std::log(y[i]));
    } else {
      ++fit.zeros_dropped;
    }
  }
  fit.points_used = xs.size();
  if (xs.size() < 3) {
    throw ValidationError("exponential fit needs at least 3 positive points, have " + std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw ValidationError("exponential fit needs at least two distinct times");
  const bool flat = std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys.front(); });
  if (flat) {
    fit.b = 0;
    fit.ln_a = ys.front();
    fit.r2 = 1;
    return fit;
  }
  fit.b = sxy / sxx;
  fit.ln_a = my - fit.b * mx;
  fit.r2 = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  if (fit.b > 0) fit.tau = std::log(2.0) / fit.b;
  return fit;
}

ExpFit fit_exponential(const std::vector<GrowthPoint>& points, YearMonth window_start, YearMonth window_end) {
  if (points.empty()) throw ValidationError("exponential fit on an empty series");
  const YearMonth origin = points.front().t;
  std::vector<double> t, y;
  for (const auto& p : points) {
    if (p.t < window_start || p.t > window_end) continue;
    t.push_back(p.t.years_since(origin));
    y.push_back(static_cast<double>(p.n));
  }
  return fit_exponential(t, y);
}

std::map<std::string, std::vector<GrowthPoint>> slice_series(const Snapshot& snapshot, SliceDimension dimension,
                                                             YearMonth start, YearMonth end, int k,
                                                             AccessMode mode) {
  require_k(k);
  std::vector<std::string> labels;
  if (dimension == SliceDimension::Modality) {
    for (auto m : {Modality::Text, Modality::Vision, Modality::Multimodal, Modality::Audio, Modality::Other,
                   Modality::Unknown}) {
      labels.push_back(to_string(m));
    }
  } else {
    for (auto r : {Region::NorthAmerica, Region::Europe, Region::Asia, Region::Other}) labels.push_back(to_string(r));
  }
  const auto global = cumulative_series(snapshot, start, end, mode);
  std::map<std::string, std::vector<GrowthPoint>> out;
  for (const auto& label : labels) {
    Snapshot part;
    for (const auto& m : snapshot.models) {
      const auto key = dimension == SliceDimension::Modality ? to_string(m.modality) : to_string(m.region);
      if (key == label) part.models.push_back(m);
    }
    auto s = cumulative_series(part, start, end, mode);
    s.datasets = global.datasets;
    out.emplace(label, n_series(s, k));
  }
  return out;
}

std::string growth_csv(const CumulativeSeries& series) {
  std::ostringstream os;
  os << "t,C,O,D,N_k1,N_k2,N_k3\n";
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    const auto c = series.closed[i], o = series.open[i], d = series.datasets[i];
    os << series.grid[i].str() << ',' << c << ',' << o << ',' << d << ',' << n_bound(c, o, d, 1) << ','
       << n_bound(c, o, d, 2) << ',' << n_bound(c, o, d, 3) << '\n';
  }
  return os.str();
}

std::string fits_csv(const std::vector<FitRow>& rows) {
  std::ostringstream os;
  os << "metric,b,r2,tau,points_used,zeros_dropped\n";
  for (const auto& r : rows) {
    os << r.metric << ',' << fmt(r.fit.b) << ',' << fmt(r.fit.r2) << ',' << (r.fit.tau ? fmt(*r.fit.tau) : "")
       << ',' << r.fit.points_used << ',' << r.fit.zeros_dropped << '\n';
  }
  return os.str();
}

nlohmann::json fits_json(const std::vector<FitRow>& rows) {
  auto a = nlohmann::json::array();
  for (const auto& r : rows) {
    a.push_back({{"metric", r.metric},
                 {"b", r.fit.b},
                 {"ln_a", r.fit.ln_a},
                 {"r2", r.fit.r2},
                 {"tau", r.fit.tau ? nlohmann::json(*r.fit.tau) : nlohmann::json(nullptr)},
                 {"points_used", r.fit.points_used},
                 {"zeros_dropped", r.fit.zeros_dropped}});
  }
  return a;
}

}  // namespace attrib
