#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pn2sc/chart.hpp"
#include "pn2sc/engine.hpp"
#include "pn2sc/net.hpp"

namespace pn2sc {

/// The six rules of the net-to-statechart transformation, wired with their
/// dependencies. A RuleSet serves one transformation pass: the chart created
/// by PetriNet2StateChart is owned here until `take_chart` is called.
class RuleSet {
 public:
  RuleSet();
  RuleSet(const RuleSet&) = delete;
  RuleSet& operator=(const RuleSet&) = delete;

  /// Net -> chart. Depends on PetriNet2TopState, persisting the topstate.
  engine::Rule<PetriNet, StateChart> petri_net_to_state_chart;
  /// Net -> topstate. Depends on Place2Or for every place and on
  /// Transition2HyperEdge for every transition.
  engine::Rule<PetriNet, AndState> petri_net_to_top_state;
  engine::Rule<Place, Basic> place_to_basic;
  /// Place -> OR wrapping the place's Basic (via Place2Basic).
  engine::Rule<Place, OrState> place_to_or;
  /// Transition -> hyperedge between the Basics of its preset and postset.
  engine::Rule<Transition, HyperEdge> transition_to_hyper_edge;
  /// Merged place -> OR around the staged AND; creates no Basic.
  engine::Rule<Place, OrState> and_rule_place_to_or;

  /// Chart produced by the last PetriNet2StateChart execution.
  StateChart& chart();
  StateChart take_chart();

  /// Hands the AND state to the next AndRulePlace2Or execution.
  void stage_and(AndState& node) { staged_and_ = &node; }

 private:
  std::unique_ptr<StateChart> chart_;
  const PetriNet* source_ = nullptr;
  AndState* staged_and_ = nullptr;
};

/// Runs the initialization rules on `net`. Throws ValidationError when
/// check_net reports errors.
StateChart& initialize(const PetriNet& net, RuleSet& rules,
                       engine::TransformationContext& ctx);

struct ReductionReport {
  std::size_t and_applications = 0;
  std::size_t or_applications = 0;
  std::size_t remaining_places = 0;
  std::size_t remaining_transitions = 0;
  bool fully_reduced = false;

  bool operator==(const ReductionReport&) const = default;
};

/// Net-side snapshot of one AND application, taken before the merge.
struct AndStep {
  std::string transition;
  std::vector<std::string> group;
  std::vector<std::vector<std::string>> pre_transitions;
  std::vector<std::vector<std::string>> post_transitions;
  std::string merged_place;
};

struct ReduceOptions {
  /// When set, the worklist pops a uniformly random pending transition
  /// instead of FIFO order.
  std::optional<std::uint64_t> shuffle_seed;
  std::function<void(const AndStep&)> on_and_step;
};

/// Applies the AND and OR reduction rules to a working copy of the input net
/// and mirrors every step in the chart through the trace.
class Reducer {
 public:
  /// `original` is the pristine input; its ids are never reused for merged
  /// places.
  Reducer(PetriNet& working, const PetriNet& original, StateChart& chart,
          RuleSet& rules, engine::TransformationContext& ctx);

  /// False when the transition no longer exists or the rule does not apply.
  bool try_and_rule(const std::string& transition_id);
  bool try_or_rule(const std::string& transition_id);

  ReductionReport reduce(const ReduceOptions& options = {});

 private:
  OrState& traced_or(const Place& place) const;
  std::string fresh_place_id();
  static bool connected_elsewhere(const Place& q, const Place& p,
                                  const Transition& via);

  PetriNet& net_;
  const PetriNet& original_;
  StateChart& chart_;
  RuleSet& rules_;
  engine::TransformationContext& ctx_;
  const ReduceOptions* options_ = nullptr;
  Place* last_survivor_ = nullptr;
  std::size_t and_count_ = 0;
  std::size_t or_count_ = 0;
  std::uint64_t fresh_counter_ = 1;
};

struct TransformResult {
  StateChart chart;
  ReductionReport report;
  engine::TraceDocument trace;
};

/// Initializes on `input`, reduces a deep copy of it, and exports the trace.
TransformResult transform(const PetriNet& input, const ReduceOptions& options = {});

}  // namespace pn2sc
