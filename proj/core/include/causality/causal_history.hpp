#pragma once

#include <optional>
#include <set>
#include <string>

#include "causality/event_id.hpp"
#include "causality/order.hpp"

namespace causality {

/// Explicit set of event names, optionally with the distinguished last
/// local event (the dot). This is the reference encoding every compact
/// mechanism is checked against.
class CausalHistory {
 public:
  CausalHistory() = default;
  /// Throws `Error` if `dot` is present but not a member of `events`.
  explicit CausalHistory(std::set<EventId> events, std::optional<EventId> dot = std::nullopt);

  const std::set<EventId>& events() const noexcept { return events_; }
  const std::optional<EventId>& dot() const noexcept { return dot_; }
  bool contains(const EventId& id) const { return events_.contains(id); }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  bool operator==(const CausalHistory&) const = default;

 private:
  std::set<EventId> events_;
  std::optional<EventId> dot_;
};

/// Adds a fresh name and makes it the dot. Throws if `id` is already present.
CausalHistory ch_new_event(const CausalHistory& prev, const EventId& id);

/// Set union. The dot is cleared: a merge is not itself an event.
CausalHistory ch_merge(const CausalHistory& x, const CausalHistory& y);

/// Strict set inclusion decides Before/After.
Order ch_relation(const CausalHistory& x, const CausalHistory& y);

/// Fast test `x.dot ∈ y`. Throws if `x` has no dot.
bool ch_dot_precedes(const CausalHistory& x, const CausalHistory& y);

/// `{a1,a2,b1,*b2}`; members sorted by node name then counter, `*` marks
/// the dot.
std::string to_string(const CausalHistory& h);

}  // namespace causality
