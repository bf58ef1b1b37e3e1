#include "pn2sc/pipeline.hpp"

#include <deque>
#include <random>

#include "absl/container/flat_hash_set.h"

namespace pn2sc {

namespace {

template <class T>
std::vector<std::string> ids_in_net_order(const NodeSet<T>& set) {
  std::vector<std::string> out;
  for (auto* element : in_net_order(set)) out.push_back(element->id());
  return out;
}

}  // namespace

RuleSet::RuleSet()
    : petri_net_to_state_chart(
          "PetriNet2StateChart",
          [this](const PetriNet& net) -> StateChart& {
            chart_ = std::make_unique<StateChart>(net.name());
            // topstate, Basic + OR per place, and up to OR + AND per merge
            chart_->reserve(1 + 4 * net.place_count());
            source_ = &net;
            return *chart_;
          }),
      petri_net_to_top_state(
          "PetriNet2TopState",
          [this](const PetriNet&) -> AndState& { return chart().new_and(); }),
      place_to_basic("Place2Basic",
                     [this](const Place& p) -> Basic& {
                       return chart().new_basic(p.id());
                     }),
      place_to_or("Place2Or",
                  [this](const Place&) -> OrState& { return chart().new_or(); }),
      transition_to_hyper_edge("Transition2HyperEdge",
                               [this](const Transition& t) -> HyperEdge& {
                                 return chart().new_hyperedge(t.id());
                               }),
      and_rule_place_to_or("AndRulePlace2Or", [this](const Place&) -> OrState& {
        AndState* node = staged_and_;
        staged_and_ = nullptr;
        State* children[] = {node};
        return chart().new_or(children);
      }) {
  petri_net_to_state_chart.require(
      petri_net_to_top_state,
      [](StateChart& chart, AndState& top) { chart.set_topstate(top); });

  petri_net_to_top_state
      .require_many(
          place_to_or,
          [](const PetriNet& net, const AndState&) {
            std::vector<const Place*> out;
            for (const auto& p : net.places()) out.push_back(&p);
            return out;
          },
          [this](AndState& top, OrState& node) { chart().attach(top, node); })
      .require_many(
          transition_to_hyper_edge,
          [](const PetriNet& net, const AndState&) {
            std::vector<const Transition*> out;
            for (const auto& t : net.transitions()) out.push_back(&t);
            return out;
          },
          nullptr);

  place_to_or.require(place_to_basic, [this](OrState& node, Basic& leaf) {
    chart().attach(node, leaf);
  });

  transition_to_hyper_edge
      .require_many(
          place_to_basic,
          [](const Transition& t, const HyperEdge&) {
            return in_net_order(t.preset());
          },
          [](HyperEdge& edge, Basic& leaf) { edge.add_source(leaf); })
      .require_many(
          place_to_basic,
          [](const Transition& t, const HyperEdge&) {
            return in_net_order(t.postset());
          },
          [](HyperEdge& edge, Basic& leaf) { edge.add_target(leaf); });

  auto in_source = [this](const auto& element) {
    return source_ && source_->contains(element);
  };
  place_to_basic.accepts(in_source);
  place_to_or.accepts(in_source);
  transition_to_hyper_edge.accepts(in_source);
  and_rule_place_to_or.accepts(
      [this](const Place&) { return staged_and_ != nullptr; });
}

StateChart& RuleSet::chart() {
  if (!chart_) throw PreconditionError("no chart has been created yet");
  return *chart_;
}

StateChart RuleSet::take_chart() {
  StateChart out = std::move(chart());
  chart_.reset();
  return out;
}

StateChart& initialize(const PetriNet& net, RuleSet& rules,
                       engine::TransformationContext& ctx) {
  auto violations = check_net(net);
  if (has_errors(violations)) {
    throw ValidationError("net '" + net.name() + "' is invalid:\n" +
                          describe(violations));
  }
  // Init entries, plus at most one AndRulePlace2Or entry per place.
  ctx.reserve(ctx.size() + 2 + 3 * net.place_count() + net.transition_count());
  return engine::execute(ctx, rules.petri_net_to_state_chart, net);
}

Reducer::Reducer(PetriNet& working, const PetriNet& original, StateChart& chart,
                 RuleSet& rules, engine::TransformationContext& ctx)
    : net_(working), original_(original), chart_(chart), rules_(rules), ctx_(ctx) {}

OrState& Reducer::traced_or(const Place& place) const {
  const auto* e = ctx_.first_by_kind(typeid(Place), place.id(), typeid(OrState));
  if (!e || e->next_of_kind) {
    std::size_t n = 0;
    for (; e; e = e->next_of_kind) ++n;
    throw TraceCorruptionError("place '" + place.id() + "' is traced to " +
                               std::to_string(n) + " OR states");
  }
  return *static_cast<OrState*>(e->output);
}

std::string Reducer::fresh_place_id() {
  std::string id;
  do {
    id = "m" + std::to_string(fresh_counter_++);
  } while (net_.id_in_use(id) || original_.id_in_use(id));
  return id;
}

bool Reducer::connected_elsewhere(const Place& q, const Place& p,
                                  const Transition& via) {
  auto degree = [](const Place& x) {
    return x.pre_transitions().size() + x.post_transitions().size();
  };
  // Scan the cheaper side. `from` reaches `to` through some t' != via, or
  // `to` reaches `from`.
  const bool scan_q = degree(q) <= degree(p);
  const Place& from = scan_q ? q : p;
  const Place& to = scan_q ? p : q;
  auto* target = const_cast<Place*>(&to);
  for (auto* t : from.post_transitions()) {
    if (t != &via && t->postset().count(target)) return true;
  }
  for (auto* t : from.pre_transitions()) {
    if (t != &via && t->preset().count(target)) return true;
  }
  return false;
}

bool Reducer::try_or_rule(const std::string& transition_id) {
  Transition* t = net_.find_transition(transition_id);
  if (!t || t->preset().size() != 1 || t->postset().size() != 1) return false;
  Place* q = *t->preset().begin();
  Place* p = *t->postset().begin();
  if (q == p || connected_elsewhere(*q, *p, *t)) return false;

  OrState& kept = traced_or(*q);
  OrState& absorbed = traced_or(*p);

  remove_transition(net_, *t);
  fuse_places(net_, *q, *p);

  chart_.detach(absorbed);
  chart_.absorb(kept, absorbed);

  last_survivor_ = q;
  ++or_count_;
  return true;
}

bool Reducer::try_and_rule(const std::string& transition_id) {
  Transition* t = net_.find_transition(transition_id);
  if (!t) return false;
  const NodeSet<Place>* candidates = nullptr;
  if (t->preset().size() >= 2) {
    candidates = &t->preset();
  } else if (t->postset().size() >= 2) {
    candidates = &t->postset();
  } else {
    return false;
  }

  std::vector<Place*> group = in_net_order(*candidates);
  const Place& first = *group.front();
  for (auto* q : group) {
    if (q->on_self_loop()) return false;
    if (q->pre_transitions() != first.pre_transitions() ||
        q->post_transitions() != first.post_transitions()) {
      return false;
    }
  }

  std::vector<OrState*> branches;
  branches.reserve(group.size());
  for (auto* q : group) branches.push_back(&traced_or(*q));

  const std::string merged_id = fresh_place_id();
  if (options_ && options_->on_and_step) {
    AndStep step{transition_id, {}, {}, {}, merged_id};
    for (auto* q : group) {
      step.group.push_back(q->id());
      step.pre_transitions.push_back(ids_in_net_order(q->pre_transitions()));
      step.post_transitions.push_back(ids_in_net_order(q->post_transitions()));
    }
    options_->on_and_step(step);
  }

  Place& merged = replace_places(net_, group, merged_id);

  for (auto* node : branches) chart_.detach(*node);
  AndState& parallel = chart_.new_and(branches);
  rules_.stage_and(parallel);
  OrState& wrapper = engine::execute(ctx_, rules_.and_rule_place_to_or,
                                     static_cast<const Place&>(merged));
  chart_.attach(*chart_.topstate(), wrapper);

  last_survivor_ = &merged;
  ++and_count_;
  return true;
}

ReductionReport Reducer::reduce(const ReduceOptions& options) {
  options_ = &options;
  std::deque<std::string> fifo;
  std::vector<std::string> pool;
  absl::flat_hash_set<std::string> queued;
  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  auto push = [&](const std::string& id) {
    if (!queued.insert(id).second) return;
    if (rng) {
      pool.push_back(id);
    } else {
      fifo.push_back(id);
    }
  };
  auto pop = [&]() {
    std::string id;
    if (rng) {
      const std::size_t pick = (*rng)() % pool.size();
      std::swap(pool[pick], pool.back());
      id = std::move(pool.back());
      pool.pop_back();
    } else {
      id = std::move(fifo.front());
      fifo.pop_front();
    }
    queued.erase(id);
    return id;
  };

  for (const auto& t : net_.transitions()) push(t.id());

  while (!(rng ? pool.empty() : fifo.empty())) {
    const std::string id = pop();
    if (!try_or_rule(id) && !try_and_rule(id)) continue;
    for (auto* t : in_net_order(last_survivor_->pre_transitions())) push(t->id());
    for (auto* t : in_net_order(last_survivor_->post_transitions())) push(t->id());
  }
  options_ = nullptr;

  ReductionReport report;
  report.and_applications = and_count_;
  report.or_applications = or_count_;
  report.remaining_places = net_.place_count();
  report.remaining_transitions = net_.transition_count();
  report.fully_reduced =
      report.remaining_places == 1 && report.remaining_transitions == 0;
  return report;
}

TransformResult transform(const PetriNet& input, const ReduceOptions& options) {
  RuleSet rules;
  engine::TransformationContext ctx;
  StateChart& chart = initialize(input, rules, ctx);
  PetriNet working(input);
  Reducer reducer(working, input, chart, rules, ctx);
  ReductionReport report = reducer.reduce(options);
  engine::TraceDocument trace = engine::trace_export(ctx);
  return {rules.take_chart(), report, std::move(trace)};
}

}  // namespace pn2sc
