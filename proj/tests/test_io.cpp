#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"
#include "pn2sc/generator.hpp"
#include "pn2sc/io.hpp"
#include "pn2sc/pipeline.hpp"

using namespace pn2sc;
using io::Format;

namespace {

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != '\n' && c != ' ') out += c;
  }
  return out;
}

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("parse the D1 document") {
  PetriNet net = io::parse_net(io::read_file(fixtures::data_path("d1.xml")), Format::xml);
  CHECK(net.name() == "D1");
  CHECK(net.place_count() == 4);
  CHECK(net.transition_count() == 2);
  CHECK(structurally_equal(net, fixtures::d1()));
}

TEST_CASE("parse a one-place document") {
  PetriNet net =
      io::parse_net(R"(<petrinet name="x"><place id="p0"/></petrinet>)", Format::xml);
  CHECK(net.place_count() == 1);
  CHECK(net.transition_count() == 0);
}

TEST_CASE("dangling references are semantic errors naming the id") {
  try {
    io::parse_net(io::read_file(fixtures::data_path("dangling.xml")), Format::xml);
    FAIL("expected a semantic error");
  } catch (const SemanticError& e) {
    CHECK(e.element() == "pX");
  }
}

TEST_CASE("malformed documents are syntax errors with a line") {
  try {
    io::parse_net("<petrinet name=\"x\">\n<place id=\"p0\">\n</petrinet>", Format::xml);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() >= 2);
  }
  try {
    io::parse_net("{\n  \"name\": \"x\",\n  \"places\": [,]\n}", Format::json);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("semantic net errors") {
  CHECK_THROWS_AS(io::parse_net(R"(<petrinet name="x"/>)", Format::xml), SemanticError);
  CHECK_THROWS_AS(io::parse_net(R"(<petrinet name="x"><place id="a"/><place id="a"/></petrinet>)",
                                Format::xml),
                  SemanticError);
  CHECK_THROWS_AS(
      io::parse_net(R"(<petrinet name="x"><place id="a"/><transition id="t" src="a" tgt=""/></petrinet>)",
                    Format::xml),
      SemanticError);
  CHECK_THROWS_AS(io::parse_net(R"({"name":"x","places":[{"id":"a"}],"transitions":[{"id":"a","src":["a"],"tgt":["a"]}]})",
                                Format::json),
                  SemanticError);
}

TEST_CASE("net round trips in both formats") {
  for (Format f : {Format::xml, Format::json}) {
    PetriNet net = generate_sp({40, 3, 4});
    std::string bytes = io::write_net(net, f);
    PetriNet back = io::parse_net(bytes, f);
    CHECK(structurally_equal(net, back));
    CHECK(io::write_net(back, f) == bytes);
    CHECK(io::sniff_format(bytes) == f);
  }
}

TEST_CASE("single-place chart document") {
  PetriNet net("x");
  net.add_place("p0");
  TransformResult r = transform(net);
  std::string xml = io::write_chart(r.chart, Format::xml);
  CHECK(squeeze(xml) ==
        "<statechartname=\"x\"><andid=\"s0\"><orid=\"s1\"><basicid=\"s2\"place=\"p0\"/>"
        "</or></and></statechart>");
  CHECK(xml.back() == '\n');
}

TEST_CASE("D1 chart document") {
  TransformResult r = transform(fixtures::d1());
  std::string xml = io::write_chart(r.chart, Format::xml);
  // topstate holds exactly one or element
  StateChart back = io::parse_chart(xml, Format::xml);
  CHECK(back.topstate()->child_count() == 1);
  CHECK(occurrences(xml, "<hyperedge ") == 2);
  CHECK(occurrences(xml, "transition=\"t1\"") == 1);
  CHECK(occurrences(xml, "transition=\"t2\"") == 1);
  for (Format f : {Format::xml, Format::json}) {
    std::string bytes = io::write_chart(r.chart, f);
    StateChart parsed = io::parse_chart(bytes, f);
    CHECK(structurally_equal(parsed, r.chart));
    CHECK(io::write_chart(parsed, f) == bytes);
    CHECK(validate_chart(parsed).empty());
  }
}

TEST_CASE("chart reader rejects broken alternation and references") {
  CHECK_THROWS_AS(
      io::parse_chart(R"(<statechart name="c"><and id="s0"><basic id="s1" place="p"/></and></statechart>)",
                      Format::xml),
      SemanticError);
  CHECK_THROWS_AS(
      io::parse_chart(R"(<statechart name="c"><and id="s0"><or id="s1"><or id="s2"/></or></and></statechart>)",
                      Format::xml),
      SemanticError);
  CHECK_THROWS_AS(
      io::parse_chart(R"(<statechart name="c"><and id="s0"><or id="s1"><basic id="s2" place="p"/></or></and>)"
                      R"(<hyperedge id="s3" transition="t" src="s2" tgt="s9"/></statechart>)",
                      Format::xml),
      SemanticError);
  CHECK_THROWS_AS(
      io::parse_chart(R"({"name":"c","topstate":{"kind":"and","id":"s0","children":[{"kind":"basic","id":"s1","place":"p"}]}})",
                      Format::json),
      SemanticError);
}

TEST_CASE("writers refuse invalid charts") {
  StateChart chart("bad");
  AndState& top = chart.new_and();
  chart.set_topstate(top);
  chart.attach(top, chart.new_or());
  CHECK_THROWS_AS(io::write_chart(chart, Format::xml), ValidationError);
}

TEST_CASE("trace documents") {
  engine::TraceDocument empty;
  CHECK(io::write_trace(empty) == "[]\n");
  CHECK(io::parse_trace("[]\n", Format::json).entries.empty());

  TransformResult r = transform(fixtures::d1());
  for (Format f : {Format::xml, Format::json}) {
    std::string bytes = io::write_trace(r.trace, f);
    CHECK(io::parse_trace(bytes, f) == r.trace);
  }
  CHECK_THROWS_AS(io::parse_trace(R"([{"rule":"x"}])", Format::json), SemanticError);
}

TEST_CASE("format names and sniffing") {
  CHECK(io::format_from_name("xml") == Format::xml);
  CHECK(io::format_from_name("json") == Format::json);
  CHECK_FALSE(io::format_from_name("yaml"));
  CHECK(io::sniff_format("  \n{") == Format::json);
  CHECK(io::sniff_format("[]") == Format::json);
  CHECK(io::sniff_format("<petrinet/>") == Format::xml);
}

TEST_CASE("file helpers") {
  auto path = std::filesystem::temp_directory_path() / "pn2sc-io-test.txt";
  io::write_file(path, "abc\n");
  CHECK(io::read_file(path) == "abc\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_file(path), Error);
}
