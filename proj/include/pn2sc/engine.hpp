#pragma once

// Rule-based transformation engine.
//
// A rule maps one input element to one output object. Executing a rule on an
// input that was already transformed within the same context returns the
// recorded output without running anything again. Every execution leaves a
// (rule, input, output) entry in the context's trace, which can be queried by
// rule or by output type.
//
// Execution order for a fresh (rule, input) pair:
//   1. output = create(input)
//   2. trace entry recorded (recursive lookups already see it)
//   3. dependencies, in declaration order: selector -> execute target ->
//      persistor
//   4. transform(input, output, context)

#include <cstddef>
#include <deque>
#include <functional>
#include <memory_resource>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <typeindex>
#include <typeinfo>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "pn2sc/errors.hpp"

namespace pn2sc::engine {

inline const std::string& identity(const std::string& key) { return key; }

/// Identity of a tuple input: component identities joined by ','.
template <class... Ts>
std::string identity(const std::tuple<Ts...>& tuple);

template <class T>
std::string identity_of(const T& input) {
  return std::string(identity(input));
}

template <class... Ts>
std::string identity(const std::tuple<Ts...>& tuple) {
  std::string out;
  std::apply(
      [&](const auto&... parts) {
        ((out += (out.empty() ? "" : ","), out += identity_of(parts)), ...);
      },
      tuple);
  return out;
}

class RuleBase;

/// Input rejected by a rule's acceptance predicate.
class InputRejected : public TransformationError {
 public:
  InputRejected(const std::string& rule, const std::string& input)
      : TransformationError("rule '" + rule + "' rejects input '" + input + "'"),
        rule_(rule) {}
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

struct TraceEntry {
  const RuleBase* rule;
  std::type_index input_type;
  std::string input_id;
  std::type_index output_type;
  std::string output_id;
  void* output;
  int create_calls = 0;
  int transform_calls = 0;
  // Next entry with the same (input type, input, output type), if any.
  const TraceEntry* next_of_kind = nullptr;
};

/// One exported correspondence.
struct TraceRecord {
  std::string rule;
  std::string input;
  std::string output;

  bool operator==(const TraceRecord&) const = default;
};

/// Trace in export order: sorted by rule name, then input id.
struct TraceDocument {
  std::vector<TraceRecord> entries;

  bool operator==(const TraceDocument&) const = default;
};

/// Memoization table and trace of one transformation pass. Not thread-safe;
/// distinct contexts are independent.
class TransformationContext {
 public:
  TransformationContext() = default;
  TransformationContext(const TransformationContext&) = delete;
  TransformationContext& operator=(const TransformationContext&) = delete;

  const TraceEntry* find(const RuleBase& rule, const std::string& input_id) const;
  std::vector<const TraceEntry*> find_by_kind(std::type_index input_type,
                                              const std::string& input_id,
                                              std::type_index output_type) const;
  /// Earliest matching entry; the rest follow through `next_of_kind`.
  const TraceEntry* first_by_kind(std::type_index input_type,
                                  std::string_view input_id,
                                  std::type_index output_type) const;

  const std::pmr::deque<TraceEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  void reserve(std::size_t entries) {
    memo_.reserve(entries);
    by_kind_.reserve(entries);
  }

  TraceEntry& record(TraceEntry entry);

 private:
  // Keys view the input ids stored in entries_, whose addresses are stable.
  struct MemoKey {
    const RuleBase* rule;
    std::string_view input;
    bool operator==(const MemoKey&) const = default;
    template <class H>
    friend H AbslHashValue(H h, const MemoKey& k) {
      return H::combine(std::move(h), k.rule, k.input);
    }
  };
  struct KindKey {
    std::type_index input_type;
    std::type_index output_type;
    std::string_view input;
    bool operator==(const KindKey&) const = default;
    template <class H>
    friend H AbslHashValue(H h, const KindKey& k) {
      return H::combine(std::move(h), k.input_type.hash_code(),
                        k.output_type.hash_code(), k.input);
    }
  };
  // Several rules may trace the same input to the same output type; they
  // are chained through TraceEntry::next_of_kind in recording order.
  struct KindChain {
    const TraceEntry* head;
    TraceEntry* tail;
  };

  // Entries are never freed individually; the arena keeps them close
  // together and releases them in bulk.
  std::pmr::monotonic_buffer_resource arena_;
  std::pmr::deque<TraceEntry> entries_{&arena_};
  absl::flat_hash_map<MemoKey, const TraceEntry*> memo_;
  absl::flat_hash_map<KindKey, KindChain> by_kind_;
};

enum class DependencyKind { single, many };

struct DependencyInfo {
  DependencyKind kind;
  const RuleBase* target;
};

class RuleBase {
 public:
  explicit RuleBase(std::string name) : name_(std::move(name)) {}
  RuleBase(const RuleBase&) = delete;
  RuleBase& operator=(const RuleBase&) = delete;
  virtual ~RuleBase() = default;

  const std::string& name() const noexcept { return name_; }
  const std::vector<DependencyInfo>& dependencies() const noexcept {
    return dependency_info_;
  }

 protected:
  std::vector<DependencyInfo> dependency_info_;

 private:
  std::string name_;
};

template <class In, class Out>
class Rule;

template <class In, class Out>
Out& execute(TransformationContext& ctx, const Rule<In, Out>& rule, const In& input);

/// A transformation rule from `In` to `Out`. Outputs are owned elsewhere
/// (typically by the target model); `create` returns a reference to a freshly
/// allocated one.
template <class In, class Out>
class Rule : public RuleBase {
 public:
  using Input = In;
  using Output = Out;
  using CreateFn = std::function<Out&(const In&)>;
  using TransformFn = std::function<void(const In&, Out&, TransformationContext&)>;
  using AcceptFn = std::function<bool(const In&)>;

  Rule(std::string name, CreateFn create, TransformFn transform = {})
      : RuleBase(std::move(name)),
        create_(std::move(create)),
        transform_(std::move(transform)) {}

  /// Restricts the inputs this rule accepts; others raise InputRejected.
  Rule& accepts(AcceptFn predicate) {
    accept_ = std::move(predicate);
    return *this;
  }

  /// Single dependency. `selector(input, output)` yields the target's input;
  /// `persistor(output, target_output)` may be empty.
  template <class DIn, class DOut, class Selector, class Persistor>
  Rule& require(const Rule<DIn, DOut>& target, Selector selector,
                Persistor persistor) {
    dependency_info_.push_back({DependencyKind::single, &target});
    dependencies_.push_back(
        [this, &target, selector = std::move(selector),
         persistor = std::move(persistor)](const In& input, Out& output,
                                           TransformationContext& ctx) {
          const DIn& selected = selector(input, output);
          DOut& produced = run_dependency(ctx, target, selected);
          if constexpr (!std::is_same_v<Persistor, std::nullptr_t>) {
            persistor(output, produced);
          }
        });
    return *this;
  }

  /// Single dependency on the same input, with a persistor only.
  template <class DOut, class Persistor>
  Rule& require(const Rule<In, DOut>& target, Persistor persistor) {
    return require(
        target, [](const In& input, const Out&) -> const In& { return input; },
        std::move(persistor));
  }

  /// Many dependency. `selector(input, output)` yields a range of pointers or
  /// references to target inputs; the persistor runs once per target output.
  template <class DIn, class DOut, class Selector, class Persistor>
  Rule& require_many(const Rule<DIn, DOut>& target, Selector selector,
                     Persistor persistor) {
    dependency_info_.push_back({DependencyKind::many, &target});
    dependencies_.push_back(
        [this, &target, selector = std::move(selector),
         persistor = std::move(persistor)](const In& input, Out& output,
                                           TransformationContext& ctx) {
          for (auto&& item : selector(input, output)) {
            DOut& produced = run_dependency(ctx, target, deref(item));
            if constexpr (!std::is_same_v<Persistor, std::nullptr_t>) {
              persistor(output, produced);
            }
          }
        });
    return *this;
  }

 private:
  template <class T>
  static const auto& deref(const T& value) {
    if constexpr (std::is_pointer_v<T>) {
      return *value;
    } else {
      return value;
    }
  }

  template <class DIn, class DOut>
  DOut& run_dependency(TransformationContext& ctx, const Rule<DIn, DOut>& target,
                       const DIn& input) const {
    try {
      return execute(ctx, target, input);
    } catch (const InputRejected& e) {
      if (e.rule() != target.name()) throw;
      throw TransformationError("rule '" + name() + "' selected input '" +
                                identity_of(input) + "' for rule '" +
                                target.name() + "', which rejects it");
    }
  }

  friend Out& execute<In, Out>(TransformationContext&, const Rule<In, Out>&,
                               const In&);

  CreateFn create_;
  TransformFn transform_;
  AcceptFn accept_;
  std::vector<std::function<void(const In&, Out&, TransformationContext&)>>
      dependencies_;
};

/// Runs `rule` on `input` at most once per context and returns its output.
template <class In, class Out>
Out& execute(TransformationContext& ctx, const Rule<In, Out>& rule, const In& input) {
  std::string input_id = identity_of(input);
  if (const TraceEntry* hit = ctx.find(rule, input_id)) {
    return *static_cast<Out*>(hit->output);
  }
  if (rule.accept_ && !rule.accept_(input)) {
    throw InputRejected(rule.name(), input_id);
  }

  Out& output = rule.create_(input);
  // Recorded before dependencies run so that cycles resolve to this output.
  TraceEntry& entry = ctx.record({&rule, std::type_index(typeid(In)),
                                  std::move(input_id), std::type_index(typeid(Out)),
                                  identity_of(output), &output});
  ++entry.create_calls;

  for (const auto& dependency : rule.dependencies_) dependency(input, output, ctx);
  if (rule.transform_) rule.transform_(input, output, ctx);
  ++entry.transform_calls;
  return output;
}

/// Recorded output of `rule` for `input`, or nullptr if it never ran.
template <class In, class Out>
Out* resolve(const TransformationContext& ctx, const Rule<In, Out>& rule,
             const In& input) {
  const TraceEntry* hit = ctx.find(rule, identity_of(input));
  return hit ? static_cast<Out*>(hit->output) : nullptr;
}

/// `resolve` over a range of inputs (pointers or references), in range order.
template <class In, class Out, class Range>
std::vector<Out*> resolve_many(const TransformationContext& ctx,
                               const Rule<In, Out>& rule, const Range& inputs) {
  std::vector<Out*> out;
  for (auto&& item : inputs) {
    if constexpr (std::is_pointer_v<std::decay_t<decltype(item)>>) {
      out.push_back(resolve(ctx, rule, *item));
    } else {
      out.push_back(resolve(ctx, rule, item));
    }
  }
  return out;
}

/// All outputs of type `Out` traced for `input`, across every rule, in
/// recording order.
template <class Out, class In>
std::vector<Out*> resolve_by_kind(const TransformationContext& ctx, const In& input) {
  std::vector<Out*> out;
  for (const TraceEntry* e : ctx.find_by_kind(std::type_index(typeid(In)),
                                              identity_of(input),
                                              std::type_index(typeid(Out)))) {
    out.push_back(static_cast<Out*>(e->output));
  }
  return out;
}

/// Trace as (rule, input id, output id) triples sorted by rule then input.
TraceDocument trace_export(const TransformationContext& ctx);

}  // namespace pn2sc::engine
