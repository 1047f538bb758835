#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causality/event_id.hpp"
#include "causality/order.hpp"

namespace causality {

// Lamport clocks: every node shares a single identity.

struct ScalarClock {
  std::uint64_t value = 0;
  auto operator<=>(const ScalarClock&) const = default;
};

ScalarClock lamport_event(ScalarClock c);
ScalarClock lamport_receive(ScalarClock local, ScalarClock incoming);

/// Lamport value plus the event it tags, which breaks ties.
struct LamportStamp {
  ScalarClock clock;
  EventId event;
  bool operator==(const LamportStamp&) const = default;
};

/// Total order on (value, node name, counter). Never Concurrent.
Order lamport_relation(const LamportStamp& x, const LamportStamp& y);

// Plausible clocks: k entries, node at declaration position p writes entry p mod k.

class PlausibleAssignment {
 public:
  /// Throws `Error` if k < 1.
  PlausibleAssignment(std::span<const std::string> nodes, std::size_t k);

  std::size_t modulus() const noexcept { return k_; }
  /// Throws `Error` for unknown nodes.
  std::size_t entry_of(std::string_view node) const;
  const std::map<std::string, std::size_t, std::less<>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::size_t k_;
  std::map<std::string, std::size_t, std::less<>> entries_;
};

PlausibleAssignment pc_assign(std::span<const std::string> nodes, std::size_t k);

class PlausibleClock {
 public:
  explicit PlausibleClock(std::size_t k);
  PlausibleClock(std::vector<std::uint64_t> entries);

  std::size_t modulus() const noexcept { return entries_.size(); }
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }
  std::uint64_t operator[](std::size_t i) const { return entries_.at(i); }

  bool operator==(const PlausibleClock&) const = default;

 private:
  std::vector<std::uint64_t> entries_;
};

PlausibleClock pc_event(const PlausibleClock& c, std::size_t entry);
PlausibleClock pc_merge(const PlausibleClock& x, const PlausibleClock& y);
/// Vector comparison over k entries; equal vectors are reported as
/// `Indistinguishable` because distinct events may share them.
Order pc_relation(const PlausibleClock& x, const PlausibleClock& y);

std::string to_string(const PlausibleClock& c);

}  // namespace causality
