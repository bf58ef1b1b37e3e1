#include "pn2sc/net.hpp"

#include <sstream>

namespace pn2sc {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << (v.severity == Severity::error ? "error: " : "warning: ") << v.element
        << ": " << v.message << '\n';
  }
  return out.str();
}

bool Place::on_self_loop() const {
  const auto& smaller = pre_.size() <= post_.size() ? pre_ : post_;
  const auto& larger = pre_.size() <= post_.size() ? post_ : pre_;
  for (auto* t : smaller) {
    if (larger.count(t)) return true;
  }
  return false;
}

PetriNet::PetriNet(const PetriNet& other)
    : name_(other.name_), tag_(std::make_unique<char>()) {
  reserve(other.place_count(), other.transition_count());
  for (const auto& p : other.places_) add_place(p.id(), p.name());
  auto by_seq = [](const Place* a, const Place* b) { return a->seq() < b->seq(); };
  std::vector<Place*> pre;
  std::vector<Place*> post;
  for (const auto& t : other.transitions_) {
    pre.assign(t.preset().begin(), t.preset().end());
    post.assign(t.postset().begin(), t.postset().end());
    std::sort(pre.begin(), pre.end(), by_seq);
    std::sort(post.begin(), post.end(), by_seq);
    for (auto*& p : pre) p = find_place(p->id());
    for (auto*& p : post) p = find_place(p->id());
    add_transition(t.id(), pre, post, t.name());
  }
}

PetriNet& PetriNet::operator=(const PetriNet& other) {
  if (this != &other) *this = PetriNet(other);
  return *this;
}

Place& PetriNet::add_place(std::string id, std::string name) {
  if (id.empty()) throw IdError("place id must not be empty");
  if (id_in_use(id)) throw IdError("duplicate id '" + id + "'");
  return places_.insert(
      std::make_unique<Place>(std::move(id), std::move(name), next_seq_++,
                              tag_.get()));
}

Transition& PetriNet::add_transition(std::string id,
                                     std::span<Place* const> preset,
                                     std::span<Place* const> postset,
                                     std::string name) {
  if (id.empty()) throw IdError("transition id must not be empty");
  if (id_in_use(id)) throw IdError("duplicate id '" + id + "'");
  if (preset.empty() || postset.empty()) {
    throw PreconditionError("transition '" + id +
                            "' needs a nonempty preset and postset");
  }
  for (auto* p : preset) {
    if (!p || !contains(*p)) {
      throw MembershipError("transition '" + id + "' references a foreign place");
    }
  }
  for (auto* p : postset) {
    if (!p || !contains(*p)) {
      throw MembershipError("transition '" + id + "' references a foreign place");
    }
  }
  auto& t = transitions_.insert(
      std::make_unique<Transition>(std::move(id), std::move(name), next_seq_++,
                                   tag_.get()));
  for (auto* p : preset) {
    t.preset_.insert(p);
    p->post_.insert(&t);
  }
  for (auto* p : postset) {
    t.postset_.insert(p);
    p->pre_.insert(&t);
  }
  return t;
}

Transition& PetriNet::add_transition(std::string id,
                                     const std::vector<std::string>& preset,
                                     const std::vector<std::string>& postset,
                                     std::string name) {
  auto lookup = [&](const std::vector<std::string>& ids) {
    std::vector<Place*> out;
    out.reserve(ids.size());
    for (const auto& pid : ids) {
      auto* p = find_place(pid);
      if (!p) {
        throw MembershipError("transition '" + id + "' references unknown place '" +
                              pid + "'");
      }
      out.push_back(p);
    }
    return out;
  };
  auto pre = lookup(preset);
  auto post = lookup(postset);
  return add_transition(std::move(id), pre, post, std::move(name));
}

Adjacency<Transition> adjacency(const PetriNet& net, const Place& place) {
  if (!net.contains(place)) {
    throw MembershipError("place '" + place.id() + "' is not in net '" +
                          net.name() + "'");
  }
  return {place.pre_transitions(), place.post_transitions()};
}

Adjacency<Place> adjacency(const PetriNet& net, const Transition& transition) {
  if (!net.contains(transition)) {
    throw MembershipError("transition '" + transition.id() +
                          "' is not in net '" + net.name() + "'");
  }
  return {transition.preset(), transition.postset()};
}

Place& replace_places(PetriNet& net, std::span<Place* const> group,
                      const std::string& fresh_id) {
  if (group.size() < 2) {
    throw PreconditionError("replace_places needs at least two places");
  }
  NodeSet<Place> members;
  for (auto* p : group) {
    if (!p || !net.contains(*p)) {
      throw MembershipError("replace_places: place is not in net '" + net.name() +
                            "'");
    }
    if (!members.insert(p).second) {
      throw PreconditionError("replace_places: place '" + p->id() +
                              "' listed twice");
    }
  }
  const Place& first = *group.front();
  for (auto* p : group.subspan(1)) {
    if (p->pre_ != first.pre_ || p->post_ != first.post_) {
      throw PreconditionError("replace_places: '" + p->id() + "' and '" +
                              first.id() + "' have different adjacency");
    }
  }
  if (net.id_in_use(fresh_id)) {
    throw IdError("replace_places: id '" + fresh_id + "' is already in use");
  }

  auto& merged = net.places_.insert(
      std::make_unique<Place>(fresh_id, std::string{}, net.next_seq_++,
                              net.tag_.get()));
  for (auto* t : first.pre_) {
    for (auto* p : group) t->postset_.erase(p);
    t->postset_.insert(&merged);
    merged.pre_.insert(t);
  }
  for (auto* t : first.post_) {
    for (auto* p : group) t->preset_.erase(p);
    t->preset_.insert(&merged);
    merged.post_.insert(t);
  }
  // Copy first: erasing destroys the Place objects `group` may alias.
  std::vector<Place*> doomed(group.begin(), group.end());
  for (auto* p : doomed) net.places_.erase(*p);
  return merged;
}

Place& fuse_places(PetriNet& net, Place& keep, Place& drop) {
  if (&keep == &drop) {
    throw PreconditionError("fuse_places: cannot fuse '" + keep.id() +
                            "' with itself");
  }
  if (!net.contains(keep) || !net.contains(drop)) {
    throw MembershipError("fuse_places: place is not in net '" + net.name() + "'");
  }
  for (auto* t : drop.pre_) {
    t->postset_.erase(&drop);
    t->postset_.insert(&keep);
    keep.pre_.insert(t);
  }
  for (auto* t : drop.post_) {
    t->preset_.erase(&drop);
    t->preset_.insert(&keep);
    keep.post_.insert(t);
  }
  net.places_.erase(drop);
  return keep;
}

void remove_transition(PetriNet& net, Transition& t) {
  if (!net.contains(t)) {
    throw MembershipError("transition '" + t.id() + "' is not in net '" +
                          net.name() + "'");
  }
  for (auto* p : t.preset_) p->post_.erase(&t);
  for (auto* p : t.postset_) p->pre_.erase(&t);
  net.transitions_.erase(t);
}

std::vector<Violation> check_net(const PetriNet& net) {
  std::vector<Violation> out;
  auto report = [&](const std::string& element, std::string message,
                    Severity severity = Severity::error) {
    out.push_back({element, std::move(message), severity});
  };

  if (net.place_count() == 0) report(net.name(), "net has no places");

  // Arcs seen from the place side, and whether each one was confirmed by
  // the transition at its other end.
  std::size_t place_side_in = 0;
  std::size_t place_side_out = 0;
  bool place_side_ok = true;
  for (const auto& p : net.places()) {
    if (net.find_transition(p.id())) {
      report(p.id(), "id is used by both a place and a transition");
    }
    place_side_in += p.pre_transitions().size();
    place_side_out += p.post_transitions().size();
    for (auto* t : p.pre_transitions()) {
      if (!net.contains(*t)) {
        report(p.id(), "pre-transition '" + t->id() + "' is not in the net");
        place_side_ok = false;
      } else if (!t->postset().count(const_cast<Place*>(&p))) {
        report(p.id(), "lists '" + t->id() +
                           "' as pre-transition but is not in its postset");
        place_side_ok = false;
      }
    }
    for (auto* t : p.post_transitions()) {
      if (!net.contains(*t)) {
        report(p.id(), "post-transition '" + t->id() + "' is not in the net");
        place_side_ok = false;
      } else if (!t->preset().count(const_cast<Place*>(&p))) {
        report(p.id(), "lists '" + t->id() +
                           "' as post-transition but is not in its preset");
        place_side_ok = false;
      }
    }
    if (p.on_self_loop()) {
      report(p.id(), "place is on a self-loop", Severity::warning);
    }
  }

  std::size_t transition_side_in = 0;
  std::size_t transition_side_out = 0;
  for (const auto& t : net.transitions()) {
    if (t.preset().empty()) report(t.id(), "empty preset");
    if (t.postset().empty()) report(t.id(), "empty postset");
    transition_side_in += t.preset().size();
    transition_side_out += t.postset().size();
  }
  // Every place-side arc was matched on the transition side. With equal
  // totals the transition side holds no other arcs, so there is nothing
  // left to find from that direction.
  if (place_side_ok && place_side_in == transition_side_out &&
      place_side_out == transition_side_in) {
    return out;
  }

  for (const auto& t : net.transitions()) {
    for (auto* p : t.preset()) {
      if (!net.contains(*p)) {
        report(t.id(), "preset place '" + p->id() + "' is not in the net");
      } else if (!p->post_transitions().count(const_cast<Transition*>(&t))) {
        report(t.id(), "preset place '" + p->id() +
                           "' does not list it as post-transition");
      }
    }
    for (auto* p : t.postset()) {
      if (!net.contains(*p)) {
        report(t.id(), "postset place '" + p->id() + "' is not in the net");
      } else if (!p->pre_transitions().count(const_cast<Transition*>(&t))) {
        report(t.id(), "postset place '" + p->id() +
                           "' does not list it as pre-transition");
      }
    }
  }
  return out;
}

namespace {

std::vector<std::string> sorted_ids(const NodeSet<Place>& set) {
  std::vector<std::string> ids;
  ids.reserve(set.size());
  for (auto* p : set) ids.push_back(p->id());
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

bool structurally_equal(const PetriNet& a, const PetriNet& b) {
  if (a.name() != b.name() || a.place_count() != b.place_count() ||
      a.transition_count() != b.transition_count()) {
    return false;
  }
  auto pa = a.places().begin();
  for (const auto& p : b.places()) {
    if (pa->id() != p.id() || pa->name() != p.name()) return false;
    ++pa;
  }
  auto ta = a.transitions().begin();
  for (const auto& t : b.transitions()) {
    if (ta->id() != t.id() || ta->name() != t.name() ||
        sorted_ids(ta->preset()) != sorted_ids(t.preset()) ||
        sorted_ids(ta->postset()) != sorted_ids(t.postset())) {
      return false;
    }
    ++ta;
  }
  return true;
}

}  // namespace pn2sc
