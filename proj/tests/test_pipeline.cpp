#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "pn2sc/generator.hpp"
#include "pn2sc/pipeline.hpp"

using namespace pn2sc;

namespace {

// Initialized D1 with a working copy, ready for single reduction steps.
struct D1Run {
  PetriNet original = fixtures::d1();
  RuleSet rules;
  engine::TransformationContext ctx;
  StateChart& chart = initialize(original, rules, ctx);
  PetriNet working{original};
  Reducer reducer{working, original, chart, rules, ctx};

  OrState& or_of(const std::string& place) {
    auto ors = engine::resolve_by_kind<OrState>(ctx, *working.find_place(place));
    REQUIRE(ors.size() == 1);
    return *ors[0];
  }
};

std::vector<std::string> kinds(const OrState& o) {
  std::vector<std::string> out;
  for (const auto& c : o.children()) out.push_back(to_string(c.kind()));
  return out;
}

std::size_t count(const StateChart& chart, StateKind kind) {
  std::size_t n = 0;
  for (const State* s : chart.all_nodes()) {
    if (s->kind() == kind && !s->discarded()) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("initialization of D1") {
  PetriNet net = fixtures::d1();
  RuleSet rules;
  engine::TransformationContext ctx;
  StateChart& chart = initialize(net, rules, ctx);
  REQUIRE(chart.topstate());
  CHECK(chart.topstate()->child_count() == 4);
  CHECK(count(chart, StateKind::basic) == 4);
  REQUIRE(chart.hyperedges().size() == 2);
  CHECK(oracle::canonical_hyperedges(chart) ==
        std::vector<std::string>{"t1:q -> a b", "t2:a b -> r"});
  CHECK(validate_chart(chart).empty());
  CHECK(ctx.size() == 12);

  Basic* ba = engine::resolve(ctx, rules.place_to_basic, *net.find_place("a"));
  REQUIRE(ba);
  CHECK(ba->origin_place() == "a");
  auto pre = engine::resolve_many(ctx, rules.place_to_basic,
                                  in_net_order(net.find_transition("t2")->preset()));
  REQUIRE(pre.size() == 2);
  CHECK(pre[0]->origin_place() == "a");
  CHECK(pre[1]->origin_place() == "b");

  auto ors = engine::resolve_by_kind<OrState>(ctx, *net.find_place("a"));
  REQUIRE(ors.size() == 1);
  CHECK(ors[0]->first_child() == ba);
  CHECK(engine::resolve_by_kind<AndState>(ctx, *net.find_place("q")).empty());

  // the top rule ran once and its persistor installed the topstate
  auto* top = engine::resolve(ctx, rules.petri_net_to_top_state, net);
  CHECK(top == chart.topstate());
  const auto* entry = ctx.find(rules.petri_net_to_top_state, "D1");
  REQUIRE(entry);
  CHECK(entry->create_calls == 1);
}

TEST_CASE("repeated execute returns the same Basic") {
  PetriNet net = fixtures::d1();
  RuleSet rules;
  engine::TransformationContext ctx;
  initialize(net, rules, ctx);
  const Place& q = *net.find_place("q");
  Basic& first = engine::execute(ctx, rules.place_to_basic, q);
  CHECK(&first == &engine::execute(ctx, rules.place_to_basic, q));
  CHECK(ctx.size() == 12);
}

TEST_CASE("initialization of tiny nets") {
  PetriNet single("x");
  single.add_place("p0");
  RuleSet r1;
  engine::TransformationContext c1;
  StateChart& chart1 = initialize(single, r1, c1);
  CHECK(chart1.topstate()->child_count() == 1);
  CHECK(chart1.hyperedges().empty());

  PetriNet two = fixtures::chain(2);
  RuleSet r2;
  engine::TransformationContext c2;
  StateChart& chart2 = initialize(two, r2, c2);
  CHECK(chart2.topstate()->child_count() == 2);
  CHECK(chart2.hyperedges().size() == 1);
}

TEST_CASE("initialize refuses invalid nets") {
  PetriNet net = fixtures::d1();
  NetSurgery::drop_from_preset(*net.find_transition("t2"), *net.find_place("a"));
  RuleSet rules;
  engine::TransformationContext ctx;
  CHECK_THROWS_AS(initialize(net, rules, ctx), ValidationError);
  CHECK(ctx.size() == 0);

  PetriNet empty("empty");
  RuleSet r2;
  engine::TransformationContext c2;
  CHECK_THROWS_AS(initialize(empty, r2, c2), ValidationError);
}

TEST_CASE("AND rule at t2 of D1") {
  D1Run run;
  OrState& oa = run.or_of("a");
  OrState& ob = run.or_of("b");
  CHECK(run.reducer.try_and_rule("t2"));
  CHECK(run.working.place_count() == 3);
  Place* m1 = run.working.find_place("m1");
  REQUIRE(m1);
  OrState& om = run.or_of("m1");
  CHECK(om.parent() == run.chart.topstate());
  REQUIRE(om.child_count() == 1);
  const State& inner = *om.first_child();
  REQUIRE(inner.kind() == StateKind::and_state);
  const auto& and_state = static_cast<const AndState&>(inner);
  REQUIRE(and_state.child_count() == 2);
  CHECK(and_state.first_child() == &oa);
  CHECK(ob.parent() == &and_state);
  CHECK(run.chart.topstate()->child_count() == 3);
  CHECK(validate_chart(run.chart).empty());
  CHECK(run.ctx.size() == 13);
  CHECK(run.ctx.find(run.rules.and_rule_place_to_or, "m1"));
}

TEST_CASE("OR rule sequence on D1 after the AND step") {
  D1Run run;
  REQUIRE(run.reducer.try_and_rule("t2"));
  OrState& oq = run.or_of("q");
  CHECK(run.reducer.try_or_rule("t1"));
  CHECK(kinds(oq) == std::vector<std::string>{"basic", "and"});
  CHECK(run.working.place_count() == 2);
  CHECK(run.working.transition_count() == 1);
  CHECK(run.working.find_transition("t2")->preset().count(run.working.find_place("q")));

  CHECK(run.reducer.try_or_rule("t2"));
  CHECK(kinds(oq) == std::vector<std::string>{"basic", "and", "basic"});
  CHECK(run.working.place_count() == 1);
  CHECK(run.working.transition_count() == 0);
  CHECK(run.chart.topstate()->child_count() == 1);
  CHECK(validate_chart(run.chart).empty());
  // historical entries survive
  CHECK(run.ctx.size() == 13);
}

TEST_CASE("rules that do not apply leave everything untouched") {
  D1Run run;
  CHECK_FALSE(run.reducer.try_or_rule("t2"));  // |preset| = 2
  CHECK_FALSE(run.reducer.try_or_rule("nope"));
  CHECK_FALSE(run.reducer.try_and_rule("nope"));

  PetriNet chain = fixtures::chain(2);
  RuleSet rules;
  engine::TransformationContext ctx;
  StateChart& chart = initialize(chain, rules, ctx);
  PetriNet working(chain);
  Reducer reducer(working, chain, chart, rules, ctx);
  CHECK_FALSE(reducer.try_and_rule("t0"));
  CHECK(structurally_equal(working, chain));
  CHECK(ctx.size() == 7);
}

TEST_CASE("AND rule refuses unequal postsets") {
  PetriNet net("fork");
  for (const char* id : {"e", "a", "b", "x", "y"}) net.add_place(id);
  net.add_transition("t", {"e"}, {"a", "b"});
  net.add_transition("u", {"a"}, {"x"});
  net.add_transition("v", {"b"}, {"y"});
  RuleSet rules;
  engine::TransformationContext ctx;
  StateChart& chart = initialize(net, rules, ctx);
  PetriNet working(net);
  Reducer reducer(working, net, chart, rules, ctx);
  CHECK_FALSE(reducer.try_and_rule("t"));
  CHECK(working.place_count() == 5);
}

TEST_CASE("trace lookups that are not singletons are reported") {
  PetriNet net = fixtures::chain(2);
  RuleSet rules;
  engine::TransformationContext ctx;
  StateChart& chart = initialize(net, rules, ctx);
  PetriNet working(net);
  working.add_place("z");
  working.add_transition("tz", {"p1"}, {"z"});
  Reducer reducer(working, net, chart, rules, ctx);
  CHECK_THROWS_AS(reducer.try_or_rule("tz"), TraceCorruptionError);
}

TEST_CASE("reduce D1") {
  TransformResult r = transform(fixtures::d1());
  CHECK(r.report == ReductionReport{1, 2, 1, 0, true});
  CHECK(count(r.chart, StateKind::basic) == 4);
  CHECK(count(r.chart, StateKind::or_state) == 3);
  CHECK(count(r.chart, StateKind::and_state) == 2);
  CHECK(r.chart.hyperedges().size() == 2);
  CHECK(r.trace.entries.size() == 13);
  CHECK(r.trace.entries.front().rule == "AndRulePlace2Or");
  CHECK(oracle::canonical_tree(r.chart) ==
        "A[O[A[O[B(a)],O[B(b)]],B(q),B(r)]]");
  CHECK(validate_chart(r.chart).empty());

  // exact ids of the deterministic run
  const OrState& top_or = *r.chart.topstate()->first_child();
  std::vector<std::string> ids;
  for (const auto& c : top_or.children()) ids.push_back(c.id());
  CHECK(ids == std::vector<std::string>{"s2", "s11", "s8"});
}

TEST_CASE("reduce a single place") {
  PetriNet net("x");
  net.add_place("p0");
  TransformResult r = transform(net);
  CHECK(r.report == ReductionReport{0, 0, 1, 0, true});
  CHECK(oracle::canonical_tree(r.chart) == "A[O[B(p0)]]");
}

TEST_CASE("three-cycle agrees with the brute-force reducer") {
  // Verified by the oracle: one OR step, then both remaining transitions
  // connect the fused place and s in opposite directions.
  PetriNet net = fixtures::cycle3();
  TransformResult r = transform(net);
  oracle::Result expected = oracle::brute_force_reduce(net);
  CHECK_FALSE(r.report.fully_reduced);
  CHECK(r.report.or_applications == 1);
  CHECK(r.report.remaining_places == 2);
  CHECK(r.report.remaining_transitions == 2);
  CHECK(expected.remaining_places == 2);
  CHECK(expected.remaining_transitions == 2);
  CHECK(oracle::canonical_tree(r.chart) == expected.tree);
  CHECK(validate_chart(r.chart).empty());
}

TEST_CASE("self-loops are never reduced") {
  PetriNet net("loop");
  net.add_place("p");
  net.add_place("q");
  net.add_transition("t", {"p"}, {"q"});
  net.add_transition("l", {"q"}, {"q"});
  TransformResult r = transform(net);
  CHECK(r.report.or_applications == 1);
  CHECK_FALSE(r.report.fully_reduced);
  CHECK(r.report.remaining_transitions == 1);
}

TEST_CASE("AND snapshots show equal adjacency and the merged id") {
  std::vector<AndStep> steps;
  ReduceOptions options;
  options.on_and_step = [&](const AndStep& s) { steps.push_back(s); };
  PetriNet net = fixtures::fork_join(3);
  TransformResult r = transform(net, options);
  CHECK(r.report.fully_reduced);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].group == std::vector<std::string>{"b0", "b1", "b2"});
  for (std::size_t i = 1; i < steps[0].group.size(); ++i) {
    CHECK(steps[0].pre_transitions[i] == steps[0].pre_transitions[0]);
    CHECK(steps[0].post_transitions[i] == steps[0].post_transitions[0]);
  }
  CHECK(steps[0].merged_place == "m1");
}

TEST_CASE("merged ids avoid input ids") {
  PetriNet net("clash");
  for (const char* id : {"m1", "a", "b", "m2"}) net.add_place(id);
  net.add_transition("t1", {"m1"}, {"a", "b"});
  net.add_transition("t2", {"a", "b"}, {"m2"});
  std::vector<AndStep> steps;
  ReduceOptions options;
  options.on_and_step = [&](const AndStep& s) { steps.push_back(s); };
  TransformResult r = transform(net, options);
  CHECK(r.report.fully_reduced);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].merged_place == "m3");
}

TEST_CASE("transform does not touch its input and is repeatable") {
  PetriNet net = generate_sp({60, 5, 4});
  PetriNet before(net);
  TransformResult a = transform(net);
  TransformResult b = transform(net);
  CHECK(structurally_equal(net, before));
  CHECK(a.report == b.report);
  CHECK(a.trace == b.trace);
  CHECK(structurally_equal(a.chart, b.chart));
}

TEST_CASE("invariants after every reduction on generated nets") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PetriNet net = generate_sp({1 + seed * 3, seed, 3});
    TransformResult r = transform(net);
    CHECK(r.report.fully_reduced);
    CHECK(count(r.chart, StateKind::basic) == net.place_count());
    CHECK(r.chart.hyperedges().size() == net.transition_count());
    CHECK(validate_chart(r.chart).empty());
    CHECK(r.chart.topstate()->child_count() == r.report.remaining_places);
  }
}

TEST_CASE("shuffled worklists reach the oracle's result") {
  PetriNet net = generate_sp({30, 11, 4});
  oracle::Result expected = oracle::brute_force_reduce(net);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    ReduceOptions options;
    options.shuffle_seed = s;
    TransformResult r = transform(net, options);
    CHECK(r.report.fully_reduced == expected.fully_reduced);
    CHECK(oracle::and_arities(r.chart) == expected.and_arities);
    CHECK(oracle::canonical_tree(r.chart) == expected.tree);
  }
}
