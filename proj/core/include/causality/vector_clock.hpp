#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causality/causal_history.hpp"
#include "causality/event_id.hpp"
#include "causality/order.hpp"
#include "causality/universe.hpp"

namespace causality {

/// Per-node maxima over a fixed node universe.
///
/// A vector clock encodes a gap-free causal history: entry `n ↦ k` stands
/// for the names n1..nk. Clocks over different universes never compare; all
/// binary operations throw `Error` on a universe mismatch.
class VectorClock {
 public:
  explicit VectorClock(UniversePtr universe);
  VectorClock(UniversePtr universe, std::vector<std::uint64_t> counts);

  const UniversePtr& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return counts_.size(); }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t operator[](std::size_t index) const { return counts_.at(index); }
  std::uint64_t at(std::string_view node) const;

  bool operator==(const VectorClock& other) const;

 private:
  UniversePtr universe_;
  std::vector<std::uint64_t> counts_;
};

/// Increments the entry of `node` and returns the name of the new event.
std::pair<VectorClock, EventId> vc_event(const VectorClock& v, std::string_view node);
VectorClock vc_merge(const VectorClock& x, const VectorClock& y);
Order vc_relation(const VectorClock& x, const VectorClock& y);
/// expansion(x) \ expansion(y). Generally not representable as a vector.
std::set<EventId> vc_subtract(const VectorClock& x, const VectorClock& y);
CausalHistory vc_expand(const VectorClock& v);
/// Compacts a gap-free history; throws `Error` on gaps or foreign nodes.
VectorClock vc_compact(const CausalHistory& h, UniversePtr universe);

/// A vector holding the causal past of an event plus the event itself (the
/// dot) kept outside the vector. The dot may sit above a gap.
class DottedClock {
 public:
  /// Throws `Error` unless `dot.counter > context[dot.node]`.
  DottedClock(VectorClock context, EventId dot);

  const VectorClock& context() const noexcept { return context_; }
  const EventId& dot() const noexcept { return dot_; }
  const UniversePtr& universe() const noexcept { return context_.universe(); }

  /// True iff `event` belongs to the history `context ∪ {dot}`.
  bool covers(const EventId& event) const;
  /// Context with the dot entry raised to the dot counter. Equals the
  /// history only when there is no gap below the dot.
  VectorClock raised() const;

  bool operator==(const DottedClock&) const = default;

 private:
  VectorClock context_;
  EventId dot_;
};

DottedClock dvc_from_vector(const VectorClock& v, std::string_view last);
/// Inverse of `dvc_from_vector` for gap-free clocks.
VectorClock dvc_to_vector(const DottedClock& d);
/// Explicit history `expand(context) ∪ {dot}`, with the dot marked.
CausalHistory dvc_expand(const DottedClock& d);
/// Dot-membership test in both directions.
Order dvc_relation(const DottedClock& x, const DottedClock& y);

/// `[2,3,3]`
std::string to_string(const VectorClock& v);
/// `[2,1,0]b2`
std::string to_string(const DottedClock& d);
VectorClock parse_vector_clock(std::string_view text, UniversePtr universe);
DottedClock parse_dotted_clock(std::string_view text, UniversePtr universe);

}  // namespace causality
