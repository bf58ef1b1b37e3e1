#include <filesystem>

#include "doctest.h"
#include "pn2sc/bench.hpp"

using namespace pn2sc;

TEST_CASE("one size, five repetitions") {
  BenchOptions options;
  options.sizes = {200};
  BenchReport report = bench(options);
  REQUIRE(report.rows.size() == 1);
  const BenchRow& row = report.rows[0];
  CHECK_FALSE(row.error);
  CHECK(row.name == "sp200");
  CHECK(row.fully_reduced);
  CHECK(row.reading_ms > 0);
  CHECK(row.transformation_ms > 0);
  CHECK(row.writing_ms > 0);
  CHECK(report.repetitions == 5);

  std::string table = format_table(report);
  CHECK(table.rfind("Test case", 0) == 0);
  CHECK(table.find("Transformation") != std::string::npos);
  CHECK(table.find("sp200") != std::string::npos);
  CHECK(table.find("ms") != std::string::npos);
}

TEST_CASE("tiny run is still well formed") {
  BenchOptions options;
  options.sizes = {1};
  options.repetitions = 1;
  options.format = io::Format::json;
  BenchReport report = bench(options);
  REQUIRE(report.rows.size() == 1);
  CHECK_FALSE(report.rows[0].error);
  CHECK(report.rows[0].reading_ms >= 0);
  std::string csv = format_csv(report);
  CHECK(csv.rfind("case,reading_ms,transformation_ms,writing_ms\nsp1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), ',') == 6);
}

TEST_CASE("parallel cases keep size order and a given work dir") {
  auto dir = std::filesystem::temp_directory_path() / "pn2sc-bench-test";
  std::filesystem::remove_all(dir);
  BenchOptions options;
  options.sizes = {30, 10, 30};
  options.repetitions = 2;
  options.discard_first = true;
  options.parallel_cases = true;
  options.work_dir = dir;
  BenchReport report = bench(options);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].name == "sp30");
  CHECK(report.rows[1].name == "sp10");
  for (const auto& row : report.rows) CHECK_FALSE(row.error);
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("bench preconditions") {
  CHECK_THROWS_AS(bench({}), PreconditionError);
  BenchOptions options;
  options.sizes = {5};
  options.repetitions = 0;
  CHECK_THROWS_AS(bench(options), PreconditionError);
}
