#include <doctest.h>

#include <sstream>

#include "attrib/errors.hpp"
#include "attrib/ecosystem.hpp"

using namespace attrib;

namespace {

Snapshot ingest_text(const std::string& text, const RegionMap& regions = default_region_map()) {
  std::istringstream in(text);
  return ingest_csv(in, regions);
}

const char* kHeader = "name,type,organization,created_date,access,size,modality\n";

}  // namespace

TEST_CASE("parameter counts") {
  CHECK(parse_param_count("13B parameters") == doctest::Approx(1.3e10));
  CHECK(parse_param_count("540B") == doctest::Approx(5.4e11));
  CHECK(parse_param_count("175B parameters") == doctest::Approx(1.75e11));
  CHECK(parse_param_count("350M") == doctest::Approx(3.5e8));
  CHECK(parse_param_count("1.6T parameters (sparse)") == doctest::Approx(1.6e12));
  CHECK_FALSE(parse_param_count("unknown"));
  CHECK_FALSE(parse_param_count(""));
  CHECK_FALSE(parse_param_count("7 billion"));
  CHECK_FALSE(parse_param_count("12Bytes"));
}

TEST_CASE("access and modality vocabularies") {
  CHECK(classify_access("Open") == Access::Open);
  CHECK(classify_access("limited") == Access::ClosedOrRestricted);
  CHECK(classify_access("closed") == Access::ClosedOrRestricted);
  CHECK(classify_access("by request") == Access::Unknown);
  CHECK(classify_modality("text; image") == Modality::Multimodal);
  CHECK(classify_modality("speech") == Modality::Audio);
  CHECK(classify_modality("image") == Modality::Vision);
  CHECK(classify_modality("code") == Modality::Text);
  CHECK(classify_modality("protein sequences") == Modality::Other);
  CHECK(classify_modality("") == Modality::Unknown);
}

TEST_CASE("region lookup") {
  auto map = default_region_map();
  CHECK(classify_region("OpenAI", map) == Region::NorthAmerica);
  CHECK(classify_region("mistral ai", map) == Region::Europe);
  CHECK(classify_region("Tsinghua University; Zhipu AI", map) == Region::Asia);
  CHECK(classify_region("Nobody In Particular", map) == Region::Other);
  auto custom = load_region_map(ATTRIB_FIXTURES "/region_map.json");
  CHECK(custom.size() == 3);
  CHECK(classify_region("Lotus Compute", custom) == Region::Asia);
  CHECK_THROWS_AS(parse_region_map(nlohmann::json::parse(R"([{"organization":"x","region":"mars"}])")),
                  ValidationError);
}

TEST_CASE("row rules") {
  auto s = ingest_text(std::string(kHeader) +
                       "gpt,model,OpenAI,2020-05,open,175B parameters,text\n"
                       "lim,model,OpenAI,2021-02,limited,,text\n"
                       "corpus,dataset,LAION,2019,open,,image\n"
                       "bad,model,OpenAI,someday,open,1B,text\n"
                       "app,application,OpenAI,2022-01,closed,,text\n"
                       "huh,widget,OpenAI,2022-01,closed,,text\n");
  REQUIRE(s.models.size() == 2);
  CHECK(s.models[0].access == Access::Open);
  CHECK(*s.models[0].params == doctest::Approx(1.75e11));
  CHECK(s.models[0].created == YearMonth{2020, 5});
  CHECK(s.models[1].access == Access::ClosedOrRestricted);
  REQUIRE(s.datasets.size() == 1);
  CHECK(s.datasets[0].created == YearMonth{2019, 1});
  CHECK(s.others.size() == 1);
  CHECK(s.rows_read == 6);
  CHECK(s.skipped_rows() == 2);
  // every input row is a record or a skipped row
  CHECK(s.rows_read == s.models.size() + s.datasets.size() + s.others.size() + s.skipped_rows());
  bool precision_warning = false;
  for (const auto& w : s.warnings) precision_warning |= (w.field == "created_date" && !w.skipped && w.row == 3);
  CHECK(precision_warning);
}

TEST_CASE("fatal ingestion errors") {
  CHECK_THROWS_AS(ingest_text("name,type\nx,model\n"), ParseError);
  CHECK_THROWS_AS(ingest_csv(std::string(ATTRIB_FIXTURES "/nope.csv"), default_region_map()), ParseError);
  CHECK_THROWS_AS(ingest_text(""), ParseError);
}

TEST_CASE("imputation") {
  auto s = ingest_text(std::string(kHeader) + "a,model,OpenAI,2020-01,open,10B,text\n"
                                              "b,model,OpenAI,2020-01,open,30B,text\n"
                                              "c,model,OpenAI,2020-01,open,?,text\n");
  auto i = impute_params(s);
  CHECK(*i.models[2].params == doctest::Approx(2e10));
  CHECK(i.imputed_count == 1);
  auto again = impute_params(i);
  CHECK(again == i);
  auto none = ingest_text(std::string(kHeader) + "a,model,OpenAI,2020-01,open,?,text\n");
  CHECK_THROWS_AS(impute_params(none), ValidationError);
}

TEST_CASE("cumulative series") {
  auto empty = cumulative_series(Snapshot{}, {2020, 1}, {2020, 12});
  CHECK(empty.grid.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(empty.closed[i] + empty.open[i] + empty.datasets[i] == 0);
  }
  auto one = ingest_text(std::string(kHeader) + "m,model,OpenAI,2020-05,open,1B,text\n");
  auto s = cumulative_series(one, {2020, 1}, {2020, 12});
  CHECK(s.open[3] == 0);
  CHECK(s.open[4] == 1);
  CHECK(s.open[11] == 1);
  CHECK(s.closed[11] == 0);
  CHECK(s.datasets[11] == 0);
  CHECK(s.params_total[4] == doctest::Approx(1e9));
}

TEST_CASE("synthetic fixture: conservation, monotonicity, round trip") {
  auto snap = ingest_csv(std::string(ATTRIB_FIXTURES "/synthetic_assets.csv"),
                         load_region_map(ATTRIB_FIXTURES "/region_map.json"));
  CHECK(snap.rows_read == snap.models.size() + snap.datasets.size() + snap.others.size() + snap.skipped_rows());
  CHECK(snap.skipped_rows() == 2);
  for (auto mode : {AccessMode::Strict, AccessMode::Separate}) {
    auto s = cumulative_series(snap, {2017, 1}, {2025, 1}, mode);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      std::uint64_t dated = 0;
      for (const auto& m : snap.models) dated += m.created <= s.grid[i];
      CHECK(s.closed[i] + s.open[i] + s.unknown_access[i] == dated);
      if (mode == AccessMode::Strict) CHECK(s.unknown_access[i] == 0);
      if (i) {
        CHECK(s.closed[i] >= s.closed[i - 1]);
        CHECK(s.open[i] >= s.open[i - 1]);
        CHECK(s.datasets[i] >= s.datasets[i - 1]);
        CHECK(s.params_total[i] >= s.params_total[i - 1]);
      }
    }
  }
  auto back = snapshot_from_json(nlohmann::json::parse(snapshot_to_json(snap).dump()));
  CHECK(back == snap);
}

TEST_CASE("year-month helpers") {
  CHECK(YearMonth::parse("2024-02") == YearMonth{2024, 2});
  CHECK_THROWS_AS(YearMonth::parse("2024-13"), InputError);
  CHECK_THROWS_AS(YearMonth::parse("24-02"), InputError);
  CHECK(YearMonth{2019, 12}.next() == YearMonth{2020, 1});
  CHECK(YearMonth{2020, 7}.years_since({2019, 1}) == doctest::Approx(1.5));
}
