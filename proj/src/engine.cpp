#include "pn2sc/engine.hpp"

#include <algorithm>

namespace pn2sc::engine {

const TraceEntry* TransformationContext::find(const RuleBase& rule,
                                              const std::string& input_id) const {
  auto it = memo_.find(MemoKey{&rule, input_id});
  return it == memo_.end() ? nullptr : it->second;
}

const TraceEntry* TransformationContext::first_by_kind(
    std::type_index input_type, std::string_view input_id,
    std::type_index output_type) const {
  auto it = by_kind_.find(KindKey{input_type, output_type, input_id});
  return it == by_kind_.end() ? nullptr : it->second.head;
}

std::vector<const TraceEntry*> TransformationContext::find_by_kind(
    std::type_index input_type, const std::string& input_id,
    std::type_index output_type) const {
  std::vector<const TraceEntry*> out;
  for (auto* e = first_by_kind(input_type, input_id, output_type); e;
       e = e->next_of_kind) {
    out.push_back(e);
  }
  return out;
}

TraceEntry& TransformationContext::record(TraceEntry entry) {
  if (memo_.contains(MemoKey{entry.rule, entry.input_id})) {
    throw TransformationError("rule '" + entry.rule->name() +
                              "' already has a trace entry for input '" +
                              entry.input_id + "'");
  }
  entry.next_of_kind = nullptr;
  TraceEntry& stored = entries_.emplace_back(std::move(entry));
  memo_.emplace(MemoKey{stored.rule, stored.input_id}, &stored);
  auto [it, fresh] = by_kind_.try_emplace(
      KindKey{stored.input_type, stored.output_type, stored.input_id},
      KindChain{&stored, &stored});
  if (!fresh) {
    it->second.tail->next_of_kind = &stored;
    it->second.tail = &stored;
  }
  return stored;
}

TraceDocument trace_export(const TransformationContext& ctx) {
  TraceDocument doc;
  doc.entries.reserve(ctx.size());
  for (const auto& e : ctx.entries()) {
    doc.entries.push_back({e.rule->name(), e.input_id, e.output_id});
  }
  // (rule, input) pairs are unique, so an unstable sort is deterministic.
  std::sort(doc.entries.begin(), doc.entries.end(),
            [](const TraceRecord& a, const TraceRecord& b) {
              return std::tie(a.rule, a.input) < std::tie(b.rule, b.input);
            });
  return doc;
}

}  // namespace pn2sc::engine
