#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "pn2sc/io.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pn2sc");
  std::ostringstream out;
  std::ostringstream err;
  int code = pn2sc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pn2sc-cli-" + name)).string();
}

}  // namespace

TEST_CASE("transform D1") {
  Run r = run({"transform", "--input", fixtures::data_path("d1.xml"), "--output",
               tmp("d1.xml"), "--trace", tmp("d1-trace.json"), "--stats"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fully_reduced: true") != std::string::npos);
  CHECK(std::filesystem::exists(tmp("d1.xml")));
  auto trace = pn2sc::io::parse_trace(pn2sc::io::read_file(tmp("d1-trace.json")),
                                      pn2sc::io::Format::json);
  CHECK(trace.entries.size() == 13);
}

TEST_CASE("transform --require-full-reduction on the cycle") {
  Run r = run({"transform", "--input", fixtures::data_path("cycle3.xml"), "--output",
               tmp("cycle.xml"), "--require-full-reduction"});
  CHECK(r.code == 3);
  Run relaxed = run({"transform", "--input", fixtures::data_path("cycle3.xml"),
                     "--output", tmp("cycle.xml")});
  CHECK(relaxed.code == 0);
}

TEST_CASE("validate") {
  Run ok = run({"validate", "--net", fixtures::data_path("d1.xml")});
  CHECK(ok.code == 0);
  Run dangling = run({"validate", "--net", fixtures::data_path("dangling.xml")});
  CHECK(dangling.code == 2);
  CHECK(dangling.err.find("pX") != std::string::npos);
  run({"transform", "--input", fixtures::data_path("d1.xml"), "--output",
       tmp("d1.json"), "--format", "json"});
  CHECK(run({"validate", "--chart", tmp("d1.json")}).code == 0);
  CHECK(run({"validate"}).code == 1);
}

TEST_CASE("generate writes a net") {
  Run r = run({"generate", "--places", "12", "--seed", "3", "--out", tmp("g.json"),
               "--format", "json"});
  CHECK(r.code == 0);
  auto net = pn2sc::io::parse_net(pn2sc::io::read_file(tmp("g.json")),
                                  pn2sc::io::Format::json);
  CHECK(net.place_count() == 12);
  CHECK(run({"generate", "--places", "0", "--seed", "3", "--out", tmp("g.json")}).code ==
        1);
}

TEST_CASE("bench prints a table or csv") {
  Run table = run({"bench", "--sizes", "5,10", "--reps", "1"});
  CHECK(table.code == 0);
  CHECK(table.out.find("sp10") != std::string::npos);
  Run csv = run({"bench", "--sizes", "5", "--reps", "2", "--report", "csv",
                 "--discard-first"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("case,", 0) == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({"transform", "--bogus"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  Run missing = run({"transform", "--input", tmp("absent.xml"), "--output", tmp("x")});
  CHECK(missing.code == 1);
  pn2sc::io::write_file(tmp("broken.xml"), "<petrinet name=\"x\"><place");
  CHECK(run({"transform", "--input", tmp("broken.xml"), "--output", tmp("x")}).code ==
        1);
}
