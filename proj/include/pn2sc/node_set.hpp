#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <utility>

namespace pn2sc::detail {

// Pointer set keyed by the element's seq(). Up to two elements live inline
// (most places and transitions of a net have one or two neighbours per side),
// beyond that an open-addressing table with linear probing takes over.
// Erase empties or tombstones one slot; nothing else moves. Tombstones are
// dropped on the next rehash.
template <class T>
class NodeSet {
  static constexpr std::size_t kInline = 2;

 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = T*;
    using difference_type = std::ptrdiff_t;
    using pointer = T* const*;
    using reference = T* const&;

    const_iterator() = default;
    reference operator*() const { return *slot_; }
    const_iterator& operator++() {
      ++slot_;
      skip();
      return *this;
    }
    const_iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    bool operator==(const const_iterator& o) const { return slot_ == o.slot_; }

   private:
    friend class NodeSet;
    const_iterator(T* const* slot, T* const* end) : slot_(slot), end_(end) { skip(); }
    void skip() {
      while (slot_ != end_ && !live(*slot_)) ++slot_;
    }
    T* const* slot_ = nullptr;
    T* const* end_ = nullptr;
  };
  using iterator = const_iterator;
  using value_type = T*;
  using size_type = std::size_t;

  NodeSet() = default;
  template <class It>
  NodeSet(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }
  NodeSet(const NodeSet& o) {
    reserve(o.size_);
    for (T* x : o) insert(x);
  }
  NodeSet(NodeSet&& o) noexcept { steal(o); }
  NodeSet& operator=(const NodeSet& o) {
    if (this != &o) *this = NodeSet(o);
    return *this;
  }
  NodeSet& operator=(NodeSet&& o) noexcept {
    if (this != &o) {
      release();
      steal(o);
    }
    return *this;
  }
  ~NodeSet() { release(); }

  const_iterator begin() const { return {slots_, slots_ + cap_}; }
  const_iterator end() const { return {slots_ + cap_, slots_ + cap_}; }
  size_type size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  size_type count(const T* x) const { return find_slot(x) != npos ? 1 : 0; }
  bool contains(const T* x) const { return count(x) != 0; }

  std::pair<const_iterator, bool> insert(T* x) {
    if (std::size_t at = find_slot(x); at != npos) return {at_slot(at), false};
    if (!on_heap()) {
      if (size_ < kInline) {
        std::size_t i = 0;
        while (slots_[i]) ++i;
        slots_[i] = x;
        ++size_;
        return {at_slot(i), true};
      }
      rehash(kInline * 4);
    } else if ((used_ + 1) * 4 > cap_ * 3) {
      // Same capacity when tombstones alone pushed us over.
      rehash((size_ + 1) * 4 > cap_ * 3 ? cap_ * 2 : cap_);
    }
    std::size_t i = home(x);
    while (live(slots_[i])) i = (i + 1) & (cap_ - 1);
    // A reused tombstone is already counted in used_.
    if (!slots_[i]) ++used_;
    slots_[i] = x;
    ++size_;
    return {at_slot(i), true};
  }

  size_type erase(const T* x) {
    std::size_t at = find_slot(x);
    if (at == npos) return 0;
    // Inline slots are scanned, not probed, so they can simply be emptied.
    slots_[at] = on_heap() ? tomb() : nullptr;
    --size_;
    return 1;
  }

  void clear() noexcept {
    release();
    reset_inline();
  }

  void reserve(size_type n) {
    if (n <= kInline) return;
    std::size_t cap = kInline * 4;
    while (n * 4 > cap * 3) cap *= 2;
    if (!on_heap() || cap > cap_) rehash(cap);
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    if (a.size_ != b.size_) return false;
    for (T* x : a) {
      if (!b.count(x)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t npos = ~std::size_t{0};

  static T* tomb() noexcept { return reinterpret_cast<T*>(std::uintptr_t{1}); }
  static bool live(const T* x) noexcept { return x && x != tomb(); }

  bool on_heap() const noexcept { return slots_ != inline_; }

  std::size_t home(const T* x) const noexcept {
    std::uint64_t h = x->seq() * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(h >> 32) & (cap_ - 1);
  }

  std::size_t find_slot(const T* x) const noexcept {
    if (!on_heap()) {
      for (std::size_t i = 0; i < kInline; ++i) {
        if (slots_[i] == x) return i;
      }
      return npos;
    }
    for (std::size_t i = home(x);; i = (i + 1) & (cap_ - 1)) {
      if (!slots_[i]) return npos;
      if (slots_[i] == x) return i;
    }
  }

  const_iterator at_slot(std::size_t i) const { return {slots_ + i, slots_ + cap_}; }

  void rehash(std::size_t cap) {
    T** old = slots_;
    const std::size_t old_cap = cap_;
    const bool old_heap = on_heap();
    slots_ = new T*[cap]();
    cap_ = cap;
    size_ = used_ = 0;
    for (std::size_t i = 0; i < old_cap; ++i) {
      if (!live(old[i])) continue;
      std::size_t j = home(old[i]);
      while (slots_[j]) j = (j + 1) & (cap_ - 1);
      slots_[j] = old[i];
      ++size_;
      ++used_;
    }
    if (old_heap) delete[] old;
  }

  void release() noexcept {
    if (on_heap()) delete[] slots_;
  }

  void reset_inline() noexcept {
    for (auto& s : inline_) s = nullptr;
    slots_ = inline_;
    cap_ = kInline;
    size_ = used_ = 0;
  }

  // Leaves `o` empty. Assumes this set owns nothing.
  void steal(NodeSet& o) noexcept {
    if (o.on_heap()) {
      slots_ = o.slots_;
      cap_ = o.cap_;
      size_ = o.size_;
      used_ = o.used_;
    } else {
      reset_inline();
      for (std::size_t i = 0; i < kInline; ++i) inline_[i] = o.inline_[i];
      size_ = o.size_;
    }
    o.reset_inline();
  }

  T* inline_[kInline] = {};
  T** slots_ = inline_;
  std::uint32_t cap_ = kInline;
  std::uint32_t size_ = 0;
  // Heap mode only: live plus tombstoned slots, drives the rehash.
  std::uint32_t used_ = 0;
};

}  // namespace pn2sc::detail
