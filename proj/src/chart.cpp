#include "pn2sc/chart.hpp"

#include <algorithm>
#include <unordered_map>

namespace pn2sc {

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::basic:
      return "basic";
    case StateKind::or_state:
      return "or";
    case StateKind::and_state:
      return "and";
  }
  return "?";
}

void HyperEdge::add_source(Basic& b) {
  if (std::find(sources_.begin(), sources_.end(), &b) == sources_.end()) {
    sources_.push_back(&b);
  }
}

void HyperEdge::add_target(Basic& b) {
  if (std::find(targets_.begin(), targets_.end(), &b) == targets_.end()) {
    targets_.push_back(&b);
  }
}

bool StateChart::claim_id(const std::string& id) {
  if (id.empty()) return false;
  // Generated ids are "s<n>" for every n below counter_ that was not claimed
  // explicitly; they are not stored.
  if (id.size() > 1 && id[0] == 's' && (id.size() == 2 || id[1] != '0') &&
      std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
      id.size() <= 20) {
    const auto n = std::stoull(id.substr(1));
    if (n < counter_ && !used_ids_.count(id)) return false;
  }
  return used_ids_.insert(id).second;
}

template <class T, class... Args>
T& StateChart::make(std::string id, bool generated, Args&&... args) {
  if (!generated && !claim_id(id)) {
    throw IdError(id.empty() ? std::string("chart element id must not be empty")
                             : "duplicate chart element id '" + id + "'");
  }
  auto node = std::make_unique<T>(std::move(id), std::forward<Args>(args)...);
  T& ref = *node;
  nodes_.push_back(std::move(node));
  return ref;
}

std::string StateChart::next_id() {
  std::string id;
  do {
    id = "s" + std::to_string(counter_++);
  } while (!used_ids_.empty() && used_ids_.count(id));
  return id;
}

void StateChart::reserve(std::size_t nodes) { nodes_.reserve(nodes); }

void StateChart::set_topstate(AndState& top) {
  if (top.parent()) throw TreeError("topstate '" + top.id() + "' has a parent");
  if (std::none_of(nodes_.begin(), nodes_.end(),
                   [&](const auto& n) { return n.get() == &top; })) {
    throw MembershipError("topstate '" + top.id() + "' belongs to another chart");
  }
  topstate_ = &top;
}

Basic& StateChart::new_basic(std::string origin_place) {
  return make<Basic>(next_id(), true, std::move(origin_place));
}

OrState& StateChart::new_or() { return make<OrState>(next_id(), true); }

AndState& StateChart::new_and() { return make<AndState>(next_id(), true); }

OrState& StateChart::new_or(std::span<State* const> children) {
  if (children.empty()) throw PreconditionError("an OR state needs children");
  for (auto* c : children) {
    if (c->parent()) {
      throw TreeError("state '" + c->id() + "' already has a parent");
    }
    if (c->kind() == StateKind::or_state) {
      throw PreconditionError("an OR state cannot contain OR state '" + c->id() +
                              "'");
    }
  }
  auto& node = new_or();
  for (auto* c : children) node.append(*c);
  return node;
}

AndState& StateChart::new_and(std::span<OrState* const> children) {
  if (children.empty()) throw PreconditionError("an AND state needs children");
  for (auto* c : children) {
    if (c->parent()) {
      throw TreeError("state '" + c->id() + "' already has a parent");
    }
  }
  auto& node = new_and();
  for (auto* c : children) node.append(*c);
  return node;
}

HyperEdge& StateChart::new_hyperedge(std::string origin_transition) {
  return hyperedges_.emplace_back(next_id(), std::move(origin_transition));
}

Basic& StateChart::new_basic_with_id(std::string id, std::string origin_place) {
  return make<Basic>(std::move(id), false, std::move(origin_place));
}

OrState& StateChart::new_or_with_id(std::string id) {
  return make<OrState>(std::move(id), false);
}

AndState& StateChart::new_and_with_id(std::string id) {
  return make<AndState>(std::move(id), false);
}

HyperEdge& StateChart::new_hyperedge_with_id(std::string id,
                                             std::string origin_transition) {
  if (id.empty()) throw IdError("hyperedge id must not be empty");
  if (!claim_id(id)) throw IdError("duplicate chart element id '" + id + "'");
  return hyperedges_.emplace_back(std::move(id), std::move(origin_transition));
}

void StateChart::attach_any(State& parent, State& child) {
  if (child.parent()) {
    throw TreeError("state '" + child.id() + "' already has a parent");
  }
  if (&child == topstate_) throw TreeError("the topstate cannot be attached");
  if (child.discarded() || parent.discarded()) {
    throw PreconditionError("cannot attach discarded state");
  }
  for (State* up = &parent; up; up = up->parent()) {
    if (up == &child) {
      throw TreeError("attaching '" + child.id() + "' under '" + parent.id() +
                      "' would create a cycle");
    }
  }
  if (parent.kind() == StateKind::or_state) {
    static_cast<OrState&>(parent).append(child);
  } else {
    static_cast<AndState&>(parent).append(child);
  }
}

void StateChart::attach(OrState& parent, Basic& child) { attach_any(parent, child); }
void StateChart::attach(OrState& parent, AndState& child) {
  attach_any(parent, child);
}
void StateChart::attach(AndState& parent, OrState& child) {
  attach_any(parent, child);
}

State& StateChart::detach(State& node) {
  if (&node == topstate_) throw PreconditionError("cannot detach the topstate");
  State* parent = node.parent();
  if (!parent) {
    throw PreconditionError("state '" + node.id() + "' has no parent");
  }
  if (parent->kind() == StateKind::or_state) {
    static_cast<OrState*>(parent)->unlink(node);
  } else {
    static_cast<AndState*>(parent)->unlink(node);
  }
  return node;
}

void StateChart::absorb(OrState& dst, OrState& src) {
  if (&dst == &src) throw PreconditionError("cannot absorb an OR state into itself");
  if (src.parent()) {
    throw PreconditionError("absorbed state '" + src.id() + "' is still attached");
  }
  while (State* child = src.first_) {
    src.unlink(*child);
    dst.append(*child);
  }
  src.discarded_ = true;
}

std::vector<const State*> StateChart::all_nodes() const {
  std::vector<const State*> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.get());
  return out;
}

namespace {

template <class Visit>
void for_each_child(const State& node, Visit&& visit) {
  if (node.kind() == StateKind::or_state) {
    for (auto& c : static_cast<const OrState&>(node).children()) visit(c);
  } else if (node.kind() == StateKind::and_state) {
    for (auto& c : static_cast<const AndState&>(node).children()) visit(c);
  }
}

std::size_t child_count(const State& node) {
  if (node.kind() == StateKind::or_state) {
    return static_cast<const OrState&>(node).child_count();
  }
  if (node.kind() == StateKind::and_state) {
    return static_cast<const AndState&>(node).child_count();
  }
  return 0;
}

}  // namespace

std::vector<Violation> validate_chart(const StateChart& chart) {
  std::vector<Violation> out;
  auto report = [&](const std::string& element, std::string message) {
    out.push_back({element, std::move(message), Severity::error});
  };

  const AndState* top = chart.topstate();
  if (!top) {
    report(chart.name(), "chart has no topstate");
    return out;
  }
  if (top->parent()) report(top->id(), "topstate has a parent");

  std::unordered_map<const State*, bool> reached;
  std::vector<const State*> stack{top};
  reached[top] = true;
  while (!stack.empty()) {
    const State* node = stack.back();
    stack.pop_back();
    if (node->discarded()) report(node->id(), "discarded state is still in the tree");

    const std::size_t declared = child_count(*node);
    std::size_t seen = 0;
    for_each_child(*node, [&](const State& child) {
      ++seen;
      if (child.parent() != node) {
        report(child.id(), "parent pointer does not match containing state '" +
                               node->id() + "'");
      }
      if (node->kind() == StateKind::and_state &&
          child.kind() != StateKind::or_state) {
        report(child.id(), std::string("AND state '") + node->id() +
                               "' contains a " + to_string(child.kind()) +
                               " state");
      }
      if (node->kind() == StateKind::or_state &&
          child.kind() == StateKind::or_state) {
        report(child.id(), "OR state '" + node->id() + "' contains an OR state");
      }
      if (!reached.emplace(&child, true).second) {
        report(child.id(), "state is reachable more than once");
        return;
      }
      stack.push_back(&child);
    });
    if (seen != declared) {
      report(node->id(), "child count does not match child list");
    }
    if (node->kind() == StateKind::or_state && seen == 0) {
      report(node->id(), "OR state has no children");
    }
    if (node->kind() == StateKind::and_state) {
      if (node == top && seen == 0) report(node->id(), "topstate has no children");
      if (node != top && seen < 2) {
        report(node->id(), "nested AND state has fewer than two children");
      }
    }
  }

  // Detached endpoints are reported once, by the hyperedge check below.
  std::unordered_map<const State*, bool> endpoints;
  for (const auto& edge : chart.hyperedges()) {
    for (const auto* b : edge.sources()) endpoints[b] = true;
    for (const auto* b : edge.targets()) endpoints[b] = true;
  }
  for (const State* node : chart.all_nodes()) {
    if (!node->discarded() && !reached.count(node) && !endpoints.count(node)) {
      report(node->id(), "state is not attached to the tree");
    }
  }

  for (const auto& edge : chart.hyperedges()) {
    if (edge.sources().empty()) report(edge.id(), "hyperedge has no sources");
    if (edge.targets().empty()) report(edge.id(), "hyperedge has no targets");
    auto check = [&](const Basic* b) {
      if (!reached.count(b)) {
        report(edge.id(), "endpoint '" + b->id() + "' is not in the tree");
      }
    };
    for (const auto* b : edge.sources()) check(b);
    for (const auto* b : edge.targets()) check(b);
  }
  return out;
}

namespace {

bool same_subtree(const State& a, const State& b) {
  if (a.id() != b.id() || a.kind() != b.kind()) return false;
  if (a.kind() == StateKind::basic) {
    return static_cast<const Basic&>(a).origin_place() ==
           static_cast<const Basic&>(b).origin_place();
  }
  std::vector<const State*> ca;
  std::vector<const State*> cb;
  for_each_child(a, [&](const State& c) { ca.push_back(&c); });
  for_each_child(b, [&](const State& c) { cb.push_back(&c); });
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!same_subtree(*ca[i], *cb[i])) return false;
  }
  return true;
}

bool same_endpoints(const std::vector<Basic*>& a, const std::vector<Basic*>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Basic* x, const Basic* y) { return x->id() == y->id(); });
}

}  // namespace

bool structurally_equal(const StateChart& a, const StateChart& b) {
  if (a.name() != b.name()) return false;
  if (!a.topstate() || !b.topstate()) return a.topstate() == b.topstate();
  if (!same_subtree(*a.topstate(), *b.topstate())) return false;
  const auto& ha = a.hyperedges();
  const auto& hb = b.hyperedges();
  if (ha.size() != hb.size()) return false;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    if (ha[i].id() != hb[i].id() ||
        ha[i].origin_transition() != hb[i].origin_transition() ||
        !same_endpoints(ha[i].sources(), hb[i].sources()) ||
        !same_endpoints(ha[i].targets(), hb[i].targets())) {
      return false;
    }
  }
  return true;
}

}  // namespace pn2sc
