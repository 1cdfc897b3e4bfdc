#include <doctest.h>

#include <cmath>

#include "attrib/errors.hpp"
#include "attrib/growth.hpp"

using namespace attrib;

TEST_CASE("bound spot values") {
  CHECK(n_bound(2, 3, 4, 1) == 17);
  CHECK(n_bound(2, 3, 4, 2) == 35);
  CHECK(n_bound(2, 3, 4, 3) == 47);
  CHECK(brute_force_count(0, 1, 0, 3) == 1);
  CHECK(brute_force_count(5, 0, 9, 2) == 5);
  CHECK_THROWS_AS(n_bound(1, 1, 1, 4), InputError);
  CHECK_THROWS_AS(brute_force_count(1, 1, 16, 1), InputError);
  CHECK_THROWS_AS(n_bound(0, 1ull << 40, 1ull << 20, 3), ValidationError);
}

TEST_CASE("bounds match enumeration on a small grid") {
  for (std::uint64_t c = 0; c <= 3; ++c)
    for (std::uint64_t o = 0; o <= 3; ++o)
      for (std::uint64_t d = 0; d <= 8; ++d)
        for (int k = 1; k <= 3; ++k) CHECK(n_bound(c, o, d, k) == brute_force_count(c, o, d, k));
}

namespace {

std::vector<GrowthPoint> exact_series(double a, double b, int months) {
  std::vector<GrowthPoint> pts;
  for (int i = 0; i < months; ++i) {
    GrowthPoint p;
    p.t = YearMonth::from_ordinal(YearMonth{2020, 1}.ordinal() + i);
    p.n = static_cast<std::uint64_t>(std::llround(a * std::exp(b * i / 12.0)));
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("exact exponential is recovered") {
  std::vector<double> t, y;
  for (int i = 0; i < 12; ++i) {
    t.push_back(i / 12.0);
    y.push_back(5 * std::exp(1.0 * i / 12.0));
  }
  auto f = fit_exponential(t, y);
  CHECK(std::fabs(f.b - 1.0) <= 1e-9);
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*f.tau == doctest::Approx(std::log(2.0)));
  CHECK(f.ln_a == doctest::Approx(std::log(5.0)));

  for (auto& v : y) v *= 1000;
  auto g = fit_exponential(t, y);
  CHECK(std::fabs(g.b - f.b) <= 1e-12);
  CHECK(std::fabs(g.r2 - f.r2) <= 1e-12);
  CHECK(g.ln_a == doctest::Approx(f.ln_a + std::log(1000.0)));
}

TEST_CASE("fit edge cases") {
  auto flat = fit_exponential(std::vector<double>{0, 1, 2, 3}, std::vector<double>{7, 7, 7, 7});
  CHECK(flat.b == 0);
  CHECK_FALSE(flat.tau);
  auto zeros = fit_exponential(std::vector<double>{0, 1, 2, 3, 4}, std::vector<double>{0, 0, 1, 2, 4});
  CHECK(zeros.zeros_dropped == 2);
  CHECK(zeros.points_used == 3);
  CHECK_THROWS_AS(fit_exponential(std::vector<double>{0, 1, 2}, std::vector<double>{0, 1, 2}), ValidationError);

  auto pts = exact_series(1000, 0.8, 36);
  auto w = fit_exponential(pts, {2020, 1}, {2022, 12});
  CHECK(w.b == doctest::Approx(0.8).epsilon(1e-3));
  CHECK_THROWS_AS(fit_exponential(pts, {2030, 1}, {2031, 1}), ValidationError);
}

TEST_CASE("slices use global dataset counts") {
  Snapshot s;
  AssetRecord m;
  m.type = AssetType::Model;
  m.created = {2020, 1};
  m.access = Access::Open;
  m.modality = Modality::Text;
  s.models = {m, m};
  s.models[1].created = {2020, 3};
  AssetRecord d;
  d.type = AssetType::Dataset;
  d.created = {2020, 2};
  s.datasets = {d};
  auto slices = slice_series(s, SliceDimension::Modality, {2020, 1}, {2020, 4});
  auto global = n_series(cumulative_series(s, {2020, 1}, {2020, 4}), 1);
  const auto& text = slices.at("text");
  REQUIRE(text.size() == global.size());
  for (std::size_t i = 0; i < text.size(); ++i) CHECK(text[i].n == global[i].n);
  for (const auto& p : slices.at("vision")) {
    CHECK(p.n == 0);
    CHECK(p.datasets == global[&p - slices.at("vision").data()].datasets);
  }
}

TEST_CASE("series monotone in t and k") {
  Snapshot s;
  for (int i = 0; i < 20; ++i) {
    AssetRecord m;
    m.type = i % 3 ? AssetType::Model : AssetType::Dataset;
    m.created = YearMonth::from_ordinal(YearMonth{2020, 1}.ordinal() + i);
    m.access = i % 2 ? Access::Open : Access::ClosedOrRestricted;
    (m.type == AssetType::Model ? s.models : s.datasets).push_back(m);
  }
  auto c = cumulative_series(s, {2019, 6}, {2022, 1});
  auto k1 = n_series(c, 1), k2 = n_series(c, 2), k3 = n_series(c, 3);
  for (std::size_t i = 0; i < k1.size(); ++i) {
    CHECK(k1[i].n <= k2[i].n);
    CHECK(k2[i].n <= k3[i].n);
    CHECK(k1[i].n >= k1[i].closed + k1[i].open);
    if (i) CHECK(k1[i].n >= k1[i - 1].n);
  }
  auto csv = growth_csv(c);
  CHECK(csv.rfind("t,C,O,D,N_k1,N_k2,N_k3\n", 0) == 0);
}
