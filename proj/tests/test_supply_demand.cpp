#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace skillgraph;
using testsupport::CvRow;
using testsupport::VacancyRow;

namespace {

CvAggregate cv_of(const std::string& text, RecordIssues* issues_out = nullptr) {
  std::istringstream in(text);
  CvAggregate agg;
  RecordIssues issues;
  aggregate_cv(in, agg, issues);
  if (issues_out) *issues_out = issues;
  return agg;
}

VacancyAggregate vac_of(const std::string& text, RecordIssues* issues_out = nullptr) {
  std::istringstream in(text);
  VacancyAggregate agg;
  RecordIssues issues;
  aggregate_vacancies(in, agg, issues);
  if (issues_out) *issues_out = issues;
  return agg;
}

const std::string kCvHeader = "jobseeker_id,country,desired_occupation,snapshot_month\n";
const std::string kVacHeader = "vacancy_id,country,isco_code,n\n";

}  // namespace

TEST(Cv, SameSeekerAcrossMonthsCountsOnce) {
  auto agg = cv_of(kCvHeader + "js1,AT,bus,2016-01\njs1,AT,bus,2016-02\njs1,AT,bus,2016-03\n");
  EXPECT_EQ(agg.count(OccupationId("bus"), "AT"), 1u);
  EXPECT_EQ(agg.count(OccupationId("bus"), kTotal), 1u);
}

TEST(Cv, EmptyStream) {
  EXPECT_TRUE(cv_of("").empty());
  EXPECT_TRUE(cv_of(kCvHeader).empty());
}

TEST(Cv, SixRecordFixtureAgainstOracle) {
  const std::vector<CvRow> rows{{"js1", "AT", "bus", "2016-01"},   {"js1", "AT", "bus", "2016-02"},
                                {"js1", "AT", "tram", "2016-01"},  {"js2", "AT", "bus", "2016-01"},
                                {"js2", "DE", "tram", "2016-03"},  {"js2", "DE", "tram", "2016-04"}};
  auto agg = cv_of(testsupport::cv_csv(rows));
  EXPECT_EQ(agg.count(OccupationId("bus"), "AT"), 2u);
  EXPECT_EQ(agg.count(OccupationId("tram"), "AT"), 1u);
  EXPECT_EQ(agg.count(OccupationId("tram"), "DE"), 1u);
  EXPECT_EQ(agg.count(OccupationId("tram"), kTotal), 2u);
  EXPECT_EQ(agg.count(OccupationId("bus"), kTotal), 2u);
  EXPECT_EQ(agg.count(OccupationId("bus"), "DE"), 0u);

  auto store = testsupport::make_store({{"bus", {}}, {"tram", {}}});
  auto cube = attach_counts(store, agg, VacancyAggregate{});
  EXPECT_EQ(cube, testsupport::oracle_cube(store, rows, {}, {"AT", "DE"}));
}

TEST(Cv, CrossCountrySeekerCountsOncePerScope) {
  auto agg = cv_of(kCvHeader + "js1,AT,bus,2016-01\njs1,DE,bus,2016-02\n");
  EXPECT_EQ(agg.count(OccupationId("bus"), "AT"), 1u);
  EXPECT_EQ(agg.count(OccupationId("bus"), "DE"), 1u);
  EXPECT_EQ(agg.count(OccupationId("bus"), kTotal), 1u);
}

TEST(Cv, MalformedRecordsAreCountedAndSkipped) {
  RecordIssues issues;
  auto agg = cv_of(kCvHeader +
                       "js1,Austria,bus,2016-01\n"
                       "js2,AT,bus,2016-13\n"
                       ",AT,bus,2016-01\n"
                       "js3,AT,,2016-01\n"
                       "js4,AT\n"
                       "js5,at,bus,2016-01\n",
                   &issues);
  EXPECT_EQ(issues.malformed, 5u);
  EXPECT_EQ(issues.messages.size(), 5u);
  EXPECT_NE(issues.messages[0].find("line 2"), std::string::npos);
  EXPECT_EQ(agg.count(OccupationId("bus"), "AT"), 1u);
}

TEST(Cv, ConcatenatingTheStreamChangesNothing) {
  auto rows = testsupport::synthetic_cv(4, 2000, 300, {"a", "b", "c"}, {"AT", "BE", "DE"});
  auto once = cv_of(testsupport::cv_csv(rows));
  auto doubled = rows;
  doubled.insert(doubled.end(), rows.begin(), rows.end());
  EXPECT_EQ(cv_of(testsupport::cv_csv(doubled)).counts(), once.counts());
}

TEST(Cv, MergeEqualsSinglePass) {
  auto rows = testsupport::synthetic_cv(5, 3000, 400, {"a", "b", "c", "d"}, {"AT", "FI"});
  auto whole = cv_of(testsupport::cv_csv(rows));
  std::vector<CvRow> first(rows.begin(), rows.begin() + 1000), second(rows.begin() + 1000, rows.end());
  auto merged = cv_of(testsupport::cv_csv(first));
  merged.merge(cv_of(testsupport::cv_csv(second)));
  EXPECT_EQ(merged.counts(), whole.counts());
}

// ---------------------------------------------------------------------------
// Vacancies

TEST(Vacancies, CountsAreAdditive) {
  auto agg = vac_of(kVacHeader + "v1,AT,8332,3\nv2,AT,8332,2\n");
  EXPECT_EQ(agg.count(Isco4Code("8332"), "AT"), 5u);
}

TEST(Vacancies, TotalIsTheSumOverCountries) {
  auto agg = vac_of(kVacHeader + "v1,AT,8332,3\nv2,BE,8332,\nv3,DE,8332,7\nv4,DE,8331,1\n");
  EXPECT_EQ(agg.count(Isco4Code("8332"), kTotal), 11u);
  EXPECT_EQ(agg.count(Isco4Code("8332"), "AT") + agg.count(Isco4Code("8332"), "BE") +
                agg.count(Isco4Code("8332"), "DE"),
            11u);
}

TEST(Vacancies, MultiplicityColumnIsOptional) {
  auto agg = vac_of("vacancy_id,country,isco_code\nv1,AT,8332\nv2,AT,8332\n");
  EXPECT_EQ(agg.count(Isco4Code("8332"), "AT"), 2u);
}

TEST(Vacancies, MalformedRecords) {
  RecordIssues issues;
  auto agg = vac_of(kVacHeader + "v1,AT,83A2,1\nv2,AT,8332,0\nv3,AT,8332,-1\nv4,XYZ,8332,1\n"
                                 ",AT,8332,1\nv5,AT,8332,2\n",
                    &issues);
  EXPECT_EQ(issues.malformed, 5u);
  EXPECT_EQ(agg.count(Isco4Code("8332"), kTotal), 2u);
}

TEST(Vacancies, TenThousandRowsAgainstOracle) {
  const std::vector<std::string> iscos{"8331", "8332", "8322", "2512", "9999"};
  const std::vector<std::string> countries{"AT", "BE", "DE", "FI"};
  auto rows = testsupport::synthetic_vacancies(10, 10000, iscos, countries);
  auto agg = vac_of(testsupport::vacancy_csv(rows));
  for (const auto& isco : iscos) {
    std::uint64_t total = 0;
    for (const auto& c : countries) {
      std::uint64_t expected = 0;
      for (const auto& r : rows)
        if (r.isco == isco && r.country == c) expected += r.n;
      EXPECT_EQ(agg.count(Isco4Code(isco), c), expected);
      total += expected;
    }
    EXPECT_EQ(agg.count(Isco4Code(isco), kTotal), total);
  }
}

// ---------------------------------------------------------------------------
// attach_counts

TEST(Attach, VacanciesFanOutToEveryChild) {
  auto store = testsupport::make_store({{"cargo", {"x"}}, {"dangerous", {"y"}}, {"bus", {"z"}}},
                                       {{"bus", "8331"}}, "8332");
  auto vac = vac_of(kVacHeader + "v1,AT,8332,10\n");
  auto cube = attach_counts(store, CvAggregate{}, vac);
  EXPECT_EQ(cube.cell(OccupationId("cargo"), "AT").vacancies, 10u);
  EXPECT_EQ(cube.cell(OccupationId("dangerous"), "AT").vacancies, 10u);
  EXPECT_EQ(cube.cell(OccupationId("bus"), "AT").vacancies, 0u);
}

TEST(Attach, OccupationWithoutRecordsIsZeroEverywhere) {
  auto store = testsupport::make_store({{"lonely", {}}, {"busy", {}}}, {{"busy", "2512"}});
  auto cube = attach_counts(store, cv_of(kCvHeader + "js1,AT,busy,2016-01\n"),
                            vac_of(kVacHeader + "v1,AT,2512,4\n"));
  EXPECT_EQ(cube.cell(OccupationId("lonely"), kTotal), (CountCell{0, 0}));
  EXPECT_EQ(cube.cell(OccupationId("lonely"), "AT"), (CountCell{0, 0}));
  EXPECT_EQ(cube.cell(OccupationId("busy"), "AT"), (CountCell{4, 1}));
  EXPECT_TRUE(cube.cells.contains(OccupationId("lonely")));
}

TEST(Attach, OrphansAreReported) {
  auto store = testsupport::make_store({{"bus", {}}});
  AttachReport report;
  attach_counts(store, cv_of(kCvHeader + "js1,AT,ghost,2016-01\njs2,AT,ghost,2016-01\n"),
                vac_of(kVacHeader + "v1,AT,9999,3\nv2,BE,9999,2\n"), &report);
  ASSERT_EQ(report.unmapped_isco.size(), 1u);
  EXPECT_EQ(report.unmapped_isco[0].str(), "9999");
  EXPECT_EQ(report.orphaned_vacancies, 5u);
  ASSERT_EQ(report.unknown_occupations.size(), 1u);
  EXPECT_EQ(report.unknown_occupations[0].str(), "ghost");
}

TEST(Attach, MarginalConsistency) {
  const std::vector<std::string> countries{"AT", "BE", "DE"};
  auto store = testsupport::make_store({{"a", {}}, {"b", {}}, {"c", {}}}, {{"c", "2512"}});
  auto cv = testsupport::synthetic_cv(1, 500, 60, {"a", "b", "c"}, countries);
  auto vac = testsupport::synthetic_vacancies(2, 500, {"8331", "2512"}, countries);
  auto cube = attach_counts(store, cv_of(testsupport::cv_csv(cv)),
                            vac_of(testsupport::vacancy_csv(vac)));
  for (const auto& [occ, row] : cube.cells) {
    std::uint64_t vac_sum = 0, seek_max = 0;
    for (const auto& [country, cell] : row) {
      if (country == kTotal) continue;
      vac_sum += cell.vacancies;
      seek_max = std::max(seek_max, cell.seekers);
    }
    EXPECT_EQ(row.at(std::string(kTotal)).vacancies, vac_sum);
    EXPECT_GE(row.at(std::string(kTotal)).seekers, seek_max);
  }
  EXPECT_EQ(cube, testsupport::oracle_cube(store, cv, vac, countries));
}

TEST(Attach, CubeCsvRoundTrip) {
  auto store = testsupport::make_store({{"a", {}}, {"b", {}}});
  auto cv = testsupport::synthetic_cv(3, 200, 30, {"a", "b"}, {"AT", "EE"});
  auto cube = attach_counts(store, cv_of(testsupport::cv_csv(cv)),
                            vac_of(kVacHeader + "v1,EE,8331,4\n"));
  std::ostringstream out;
  write_cube_csv(cube, out);
  std::istringstream in(out.str());
  EXPECT_EQ(read_cube_csv(in), cube);
}

TEST(Attach, CubeCsvRejectsNegativeCounts) {
  std::istringstream in("esco_id,country,vacancies,seekers\na,AT,-1,0\n");
  try {
    read_cube_csv(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseFailure);
    EXPECT_EQ(e.line(), 2u);
  }
}
