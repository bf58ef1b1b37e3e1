#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "pn2sc/errors.hpp"
#include "pn2sc/node_set.hpp"

namespace pn2sc {

class Place;
class Transition;
class PetriNet;

namespace detail {
template <class T>
class OrderedStore;
}

Place& replace_places(PetriNet& net, std::span<Place* const> group,
                      const std::string& fresh_id);
Place& fuse_places(PetriNet& net, Place& keep, Place& drop);
void remove_transition(PetriNet& net, Transition& t);

/// Adjacency set. Membership, insert and erase are amortized O(1); iteration
/// order is unspecified, use `in_net_order` when order matters.
template <class T>
using NodeSet = detail::NodeSet<T>;

class Place {
 public:
  const std::string& id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  /// Transitions whose postset contains this place.
  const NodeSet<Transition>& pre_transitions() const noexcept { return pre_; }
  /// Transitions whose preset contains this place.
  const NodeSet<Transition>& post_transitions() const noexcept { return post_; }
  std::uint64_t seq() const noexcept { return seq_; }

  /// True when some transition both consumes and produces this place.
  bool on_self_loop() const;

  Place(std::string id, std::string name, std::uint64_t seq, const void* owner)
      : id_(std::move(id)), name_(std::move(name)), seq_(seq), owner_(owner) {}

 private:
  friend class PetriNet;
  friend class detail::OrderedStore<Place>;
  friend class detail::OrderedStore<Transition>;
  friend struct NetSurgery;
  friend Place& replace_places(PetriNet&, std::span<Place* const>,
                               const std::string&);
  friend Place& fuse_places(PetriNet&, Place&, Place&);
  friend void remove_transition(PetriNet&, Transition&);

  std::string id_;
  std::string name_;
  std::uint64_t seq_;
  const void* owner_;
  std::size_t slot_ = 0;
  NodeSet<Transition> pre_;
  NodeSet<Transition> post_;
};

class Transition {
 public:
  const std::string& id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  const NodeSet<Place>& preset() const noexcept { return preset_; }
  const NodeSet<Place>& postset() const noexcept { return postset_; }
  std::uint64_t seq() const noexcept { return seq_; }

  Transition(std::string id, std::string name, std::uint64_t seq, const void* owner)
      : id_(std::move(id)), name_(std::move(name)), seq_(seq), owner_(owner) {}

 private:
  friend class PetriNet;
  friend class detail::OrderedStore<Place>;
  friend class detail::OrderedStore<Transition>;
  friend struct NetSurgery;
  friend Place& replace_places(PetriNet&, std::span<Place* const>,
                               const std::string&);
  friend Place& fuse_places(PetriNet&, Place&, Place&);
  friend void remove_transition(PetriNet&, Transition&);

  std::string id_;
  std::string name_;
  std::uint64_t seq_;
  const void* owner_;
  std::size_t slot_ = 0;
  NodeSet<Place> preset_;
  NodeSet<Place> postset_;
};

namespace detail {

// Insertion-ordered owning store with O(1) amortized erase. Erased slots are
// tombstoned and compacted once they outnumber live elements.
template <class T>
class OrderedStore {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = T;
    using difference_type = std::ptrdiff_t;
    using pointer = T*;
    using reference = T&;

    iterator() = default;
    iterator(const std::unique_ptr<T>* pos, const std::unique_ptr<T>* end)
        : pos_(pos), end_(end) {
      skip();
    }

    T& operator*() const { return **pos_; }
    T* operator->() const { return pos_->get(); }
    iterator& operator++() {
      ++pos_;
      skip();
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const { return pos_ == other.pos_; }

   private:
    void skip() {
      while (pos_ != end_ && !*pos_) ++pos_;
    }
    const std::unique_ptr<T>* pos_ = nullptr;
    const std::unique_ptr<T>* end_ = nullptr;
  };

  iterator begin() const {
    return {slots_.data(), slots_.data() + slots_.size()};
  }
  iterator end() const {
    return {slots_.data() + slots_.size(), slots_.data() + slots_.size()};
  }
  std::size_t size() const noexcept { return live_; }

  void reserve(std::size_t n) {
    slots_.reserve(n);
    index_.reserve(n);
  }

  T* find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : it->second;
  }

  T& insert(std::unique_ptr<T> element) {
    element->slot_ = slots_.size();
    index_.emplace(element->id(), element.get());
    slots_.push_back(std::move(element));
    ++live_;
    return *slots_.back();
  }

  void erase(const T& element) {
    // The key views the element's id, so drop it before the element.
    index_.erase(element.id());
    slots_[element.slot_].reset();
    --live_;
    if (slots_.size() > 32 && live_ * 2 < slots_.size()) compact();
  }

 private:
  void compact() {
    std::size_t out = 0;
    for (auto& slot : slots_) {
      if (!slot) continue;
      slot->slot_ = out;
      slots_[out++] = std::move(slot);
    }
    slots_.resize(out);
  }

  std::vector<std::unique_ptr<T>> slots_;
  // Keys view the owned elements' ids.
  absl::flat_hash_map<std::string_view, T*> index_;
  std::size_t live_ = 0;
};

}  // namespace detail

/// Directed bipartite place/transition net. Place and transition ids share
/// one namespace. All arcs have weight 1.
class PetriNet {
 public:
  using PlaceRange = detail::OrderedStore<Place>;
  using TransitionRange = detail::OrderedStore<Transition>;

  explicit PetriNet(std::string name = {})
      : name_(std::move(name)), tag_(std::make_unique<char>()) {}

  /// Deep copy; element order and ids are preserved.
  PetriNet(const PetriNet& other);
  PetriNet& operator=(const PetriNet& other);
  PetriNet(PetriNet&&) noexcept = default;
  PetriNet& operator=(PetriNet&&) noexcept = default;

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void reserve(std::size_t places, std::size_t transitions) {
    places_.reserve(places);
    transitions_.reserve(transitions);
  }

  const PlaceRange& places() const noexcept { return places_; }
  const TransitionRange& transitions() const noexcept { return transitions_; }
  std::size_t place_count() const noexcept { return places_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }

  Place* find_place(const std::string& id) const { return places_.find(id); }
  Transition* find_transition(const std::string& id) const {
    return transitions_.find(id);
  }
  bool contains(const Place& p) const { return p.owner_ == tag_.get(); }
  bool contains(const Transition& t) const { return t.owner_ == tag_.get(); }
  bool id_in_use(const std::string& id) const {
    return places_.find(id) || transitions_.find(id);
  }

  /// Throws IdError when `id` is empty or already used in this net.
  Place& add_place(std::string id, std::string name = {});

  /// Presets and postsets must be nonempty and consist of places of this net.
  Transition& add_transition(std::string id, std::span<Place* const> preset,
                             std::span<Place* const> postset,
                             std::string name = {});
  /// Same as above, with places given by id.
  Transition& add_transition(std::string id,
                             const std::vector<std::string>& preset,
                             const std::vector<std::string>& postset,
                             std::string name = {});

 private:
  friend Place& replace_places(PetriNet&, std::span<Place* const>,
                               const std::string&);
  friend Place& fuse_places(PetriNet&, Place&, Place&);
  friend void remove_transition(PetriNet&, Transition&);
  friend struct NetSurgery;

  std::string name_;
  // Identity stamped on every element this net owns; survives moves of the
  // net, so membership is a pointer compare.
  std::unique_ptr<char> tag_;
  PlaceRange places_;
  TransitionRange transitions_;
  std::uint64_t next_seq_ = 0;
};

/// Live views of an element's adjacency. They stay valid until the element is
/// removed and reflect later mutations.
template <class T>
struct Adjacency {
  const NodeSet<T>& pre;
  const NodeSet<T>& post;
};

/// (pre_transitions, post_transitions) of a place.
Adjacency<Transition> adjacency(const PetriNet& net, const Place& place);
/// (preset, postset) of a transition.
Adjacency<Place> adjacency(const PetriNet& net, const Transition& transition);

/// Merges a group of places with identical adjacency into a fresh place that
/// inherits that adjacency. Returns the fresh place.
Place& replace_places(PetriNet& net, std::span<Place* const> group,
                      const std::string& fresh_id);

/// Moves every arc of `drop` onto `keep` and deletes `drop`.
Place& fuse_places(PetriNet& net, Place& keep, Place& drop);

/// Deletes `t` and all of its arcs. Removing an element twice is an error.
void remove_transition(PetriNet& net, Transition& t);

/// Reports broken structural invariants; never throws. Self-loops are
/// reported with Severity::warning.
std::vector<Violation> check_net(const PetriNet& net);

/// Sorts a set of net elements by creation order.
template <class T>
std::vector<T*> in_net_order(const NodeSet<T>& set) {
  std::vector<T*> out(set.begin(), set.end());
  std::sort(out.begin(), out.end(),
            [](const T* a, const T* b) { return a->seq() < b->seq(); });
  return out;
}

/// Same name, same place ids in order, same transition ids in order with
/// equal presets and postsets (compared by id).
bool structurally_equal(const PetriNet& a, const PetriNet& b);

inline const std::string& identity(const Place& p) { return p.id(); }
inline const std::string& identity(const Transition& t) { return t.id(); }
inline const std::string& identity(const PetriNet& n) { return n.name(); }

}  // namespace pn2sc
