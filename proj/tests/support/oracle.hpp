#pragma once

// Brute-force reference reducer used only by tests.
//
// It shares nothing with the library's reduction path: the net is kept as
// plain id -> (preset, postset) maps with adjacency recomputed by scanning,
// and the statechart as a value tree keyed by place. Each round it scans every
// transition for an applicable OR or AND step and applies the first one found.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pn2sc/chart.hpp"
#include "pn2sc/net.hpp"

namespace oracle {

struct Result {
  /// Canonical form of the final tree; children sorted, ids dropped.
  std::string tree;
  /// Canonical hyperedges "transition:src->tgt" with basics named by place.
  std::vector<std::string> hyperedges;
  bool fully_reduced = false;
  std::size_t and_steps = 0;
  std::size_t or_steps = 0;
  std::size_t remaining_places = 0;
  std::size_t remaining_transitions = 0;
  std::multiset<std::size_t> and_arities;
};

/// Reduces `net` exhaustively. `order_seed` shuffles the scan order of each
/// round; 0 scans in lexicographic id order.
Result brute_force_reduce(const pn2sc::PetriNet& net, std::uint64_t order_seed = 0);

/// Canonical tree of a library chart, comparable with Result::tree.
std::string canonical_tree(const pn2sc::StateChart& chart);
std::vector<std::string> canonical_hyperedges(const pn2sc::StateChart& chart);
std::multiset<std::size_t> and_arities(const pn2sc::StateChart& chart);

}  // namespace oracle
