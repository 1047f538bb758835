#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace causality {

/// Globally unique event name: the generating node plus a 1-based per-node
/// counter. Rendered as the concatenation, e.g. `b2`.
struct EventId {
  std::string node;
  std::uint64_t counter = 0;

  auto operator<=>(const EventId&) const = default;
  bool operator==(const EventId&) const = default;

  std::string str() const { return node + std::to_string(counter); }
};

inline std::ostream& operator<<(std::ostream& os, const EventId& id) {
  return os << id.str();
}

}  // namespace causality
