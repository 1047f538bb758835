#include "causality/causal_history.hpp"

#include <algorithm>
#include <iterator>

#include "causality/error.hpp"

namespace causality {

CausalHistory::CausalHistory(std::set<EventId> events, std::optional<EventId> dot)
    : events_(std::move(events)), dot_(std::move(dot)) {
  if (dot_ && !events_.contains(*dot_)) {
    throw Error("dot " + dot_->str() + " is not a member of the history");
  }
}

CausalHistory ch_new_event(const CausalHistory& prev, const EventId& id) {
  if (prev.contains(id)) throw Error("event " + id.str() + " already in history");
  auto events = prev.events();
  events.insert(id);
  return CausalHistory(std::move(events), id);
}

CausalHistory ch_merge(const CausalHistory& x, const CausalHistory& y) {
  auto events = x.events();
  events.insert(y.events().begin(), y.events().end());
  return CausalHistory(std::move(events));
}

Order ch_relation(const CausalHistory& x, const CausalHistory& y) {
  const auto& a = x.events();
  const auto& b = y.events();
  const bool a_in_b = a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  const bool b_in_a = b.size() <= a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
  if (a_in_b && b_in_a) return Order::Equal;
  if (a_in_b) return Order::Before;
  if (b_in_a) return Order::After;
  return Order::Concurrent;
}

bool ch_dot_precedes(const CausalHistory& x, const CausalHistory& y) {
  if (!x.dot()) throw Error("history has no dot");
  return y.contains(*x.dot());
}

std::string to_string(const CausalHistory& h) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : h.events()) {
    if (!first) out += ',';
    first = false;
    if (h.dot() && *h.dot() == e) out += '*';
    out += e.str();
  }
  out += '}';
  return out;
}

}  // namespace causality
