#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pn2sc/errors.hpp"

namespace pn2sc {

enum class StateKind { basic, or_state, and_state };

const char* to_string(StateKind kind);

class StateChart;

/// Node of the containment tree. Siblings form an intrusive doubly linked
/// list so that detaching a child is O(1) regardless of fan-out.
class State {
 public:
  State(const State&) = delete;
  State& operator=(const State&) = delete;
  virtual ~State() = default;

  const std::string& id() const noexcept { return id_; }
  StateKind kind() const noexcept { return kind_; }
  State* parent() const noexcept { return parent_; }
  bool discarded() const noexcept { return discarded_; }

 protected:
  State(std::string id, StateKind kind) : id_(std::move(id)), kind_(kind) {}

 private:
  friend class StateChart;
  template <class>
  friend class CompositeState;
  template <class>
  friend class ChildRange;

  std::string id_;
  StateKind kind_;
  State* parent_ = nullptr;
  State* prev_ = nullptr;
  State* next_ = nullptr;
  bool discarded_ = false;
};

class Basic final : public State {
 public:
  Basic(std::string id, std::string origin_place)
      : State(std::move(id), StateKind::basic),
        origin_place_(std::move(origin_place)) {}

  /// Id of the input-net place this leaf was created from.
  const std::string& origin_place() const noexcept { return origin_place_; }

 private:
  std::string origin_place_;
};

/// Forward range over a composite's children, in insertion order.
template <class Child>
class ChildRange {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Child;
    using difference_type = std::ptrdiff_t;
    using pointer = Child*;
    using reference = Child&;

    iterator() = default;
    explicit iterator(State* node) : node_(node) {}
    Child& operator*() const { return static_cast<Child&>(*node_); }
    Child* operator->() const { return static_cast<Child*>(node_); }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const { return node_ == other.node_; }

   private:
    State* node_ = nullptr;
  };

  explicit ChildRange(State* first) : first_(first) {}
  iterator begin() const { return iterator(first_); }
  iterator end() const { return iterator(); }

 private:
  State* first_;
};

template <class Child>
class CompositeState : public State {
 public:
  ChildRange<Child> children() const { return ChildRange<Child>(first_); }
  std::size_t child_count() const noexcept { return count_; }
  Child* first_child() const noexcept { return static_cast<Child*>(first_); }

 protected:
  using State::State;

 private:
  friend class StateChart;

  void append(State& child) {
    child.parent_ = this;
    child.prev_ = last_;
    child.next_ = nullptr;
    if (last_) {
      last_->next_ = &child;
    } else {
      first_ = &child;
    }
    last_ = &child;
    ++count_;
  }

  void unlink(State& child) {
    (child.prev_ ? child.prev_->next_ : first_) = child.next_;
    (child.next_ ? child.next_->prev_ : last_) = child.prev_;
    child.parent_ = child.prev_ = child.next_ = nullptr;
    --count_;
  }

  State* first_ = nullptr;
  State* last_ = nullptr;
  std::size_t count_ = 0;
};

/// Exclusive composite; children are Basic or AndState.
class OrState final : public CompositeState<State> {
 public:
  explicit OrState(std::string id)
      : CompositeState(std::move(id), StateKind::or_state) {}
};

/// Parallel composite; children are OrState.
class AndState final : public CompositeState<OrState> {
 public:
  explicit AndState(std::string id)
      : CompositeState(std::move(id), StateKind::and_state) {}
};

template <class Child>
typename ChildRange<Child>::iterator& ChildRange<Child>::iterator::operator++() {
  node_ = node_->next_;
  return *this;
}

/// Statechart transition between sets of Basic leaves.
class HyperEdge {
 public:
  HyperEdge(std::string id, std::string origin_transition)
      : id_(std::move(id)), origin_transition_(std::move(origin_transition)) {}

  const std::string& id() const noexcept { return id_; }
  const std::string& origin_transition() const noexcept {
    return origin_transition_;
  }
  /// Endpoints in the order they were added; no duplicates.
  const std::vector<Basic*>& sources() const noexcept { return sources_; }
  const std::vector<Basic*>& targets() const noexcept { return targets_; }

  void add_source(Basic& b);
  void add_target(Basic& b);

 private:
  std::string id_;
  std::string origin_transition_;
  std::vector<Basic*> sources_;
  std::vector<Basic*> targets_;
};

/// Owns every state and hyperedge it creates. Node ids are "s<counter>" from
/// a per-chart creation counter and are never reused.
class StateChart {
 public:
  explicit StateChart(std::string name = {}) : name_(std::move(name)) {}
  StateChart(StateChart&&) noexcept = default;
  StateChart& operator=(StateChart&&) noexcept = default;

  const std::string& name() const noexcept { return name_; }
  AndState* topstate() const noexcept { return topstate_; }
  /// `top` must be parentless and owned by this chart.
  void set_topstate(AndState& top);

  const std::deque<HyperEdge>& hyperedges() const noexcept { return hyperedges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  void reserve(std::size_t nodes);

  /// Nodes come back detached; the caller attaches them.
  Basic& new_basic(std::string origin_place);
  /// Empty OR, to be filled by `attach` before validation.
  OrState& new_or();
  /// Throws PreconditionError on empty `children`, TreeError if a child
  /// already has a parent.
  OrState& new_or(std::span<State* const> children);
  AndState& new_and();
  AndState& new_and(std::span<OrState* const> children);
  HyperEdge& new_hyperedge(std::string origin_transition);

  /// Explicit-id variants for readers. Throw IdError on reuse of an id.
  Basic& new_basic_with_id(std::string id, std::string origin_place);
  OrState& new_or_with_id(std::string id);
  AndState& new_and_with_id(std::string id);
  HyperEdge& new_hyperedge_with_id(std::string id, std::string origin_transition);

  void attach(OrState& parent, Basic& child);
  void attach(OrState& parent, AndState& child);
  void attach(AndState& parent, OrState& child);

  /// Removes `node` from its parent and returns it parentless.
  State& detach(State& node);

  /// Appends `src`'s children to `dst` in order and discards `src`.
  void absorb(OrState& dst, OrState& src);

  /// Every node ever created, in creation order, including discarded ones.
  std::vector<const State*> all_nodes() const;

 private:
  template <class T, class... Args>
  T& make(std::string id, bool generated, Args&&... args);
  std::string next_id();
  bool claim_id(const std::string& id);
  void attach_any(State& parent, State& child);

  std::string name_;
  std::vector<std::unique_ptr<State>> nodes_;
  std::deque<HyperEdge> hyperedges_;
  // Explicitly chosen ids only.
  std::unordered_set<std::string> used_ids_;
  AndState* topstate_ = nullptr;
  std::uint64_t counter_ = 0;
};

/// Empty iff the containment tree, alternation, child counts and hyperedge
/// endpoints are all well formed.
std::vector<Violation> validate_chart(const StateChart& chart);

/// Same ids, kinds, child order, origins and hyperedges.
bool structurally_equal(const StateChart& a, const StateChart& b);

inline const std::string& identity(const State& s) { return s.id(); }
inline const std::string& identity(const HyperEdge& h) { return h.id(); }
inline const std::string& identity(const StateChart& c) { return c.name(); }

}  // namespace pn2sc
