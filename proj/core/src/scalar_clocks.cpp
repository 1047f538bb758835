#include "causality/scalar_clocks.hpp"

#include <algorithm>
#include <tuple>

#include "causality/error.hpp"

namespace causality {

ScalarClock lamport_event(ScalarClock c) { return {c.value + 1}; }

ScalarClock lamport_receive(ScalarClock local, ScalarClock incoming) {
  return {std::max(local.value, incoming.value) + 1};
}

Order lamport_relation(const LamportStamp& x, const LamportStamp& y) {
  const auto kx = std::tie(x.clock.value, x.event.node, x.event.counter);
  const auto ky = std::tie(y.clock.value, y.event.node, y.event.counter);
  if (kx < ky) return Order::Before;
  if (ky < kx) return Order::After;
  return Order::Equal;
}

PlausibleAssignment::PlausibleAssignment(std::span<const std::string> nodes, std::size_t k) : k_(k) {
  if (k < 1) throw Error("plausible clock modulus must be at least 1");
  for (std::size_t p = 0; p < nodes.size(); ++p) entries_.emplace(nodes[p], p % k);
}

std::size_t PlausibleAssignment::entry_of(std::string_view node) const {
  auto it = entries_.find(node);
  if (it == entries_.end()) throw Error("unknown node '" + std::string(node) + "'");
  return it->second;
}

PlausibleAssignment pc_assign(std::span<const std::string> nodes, std::size_t k) {
  return PlausibleAssignment(nodes, k);
}

PlausibleClock::PlausibleClock(std::size_t k) : entries_(k, 0) {
  if (k < 1) throw Error("plausible clock modulus must be at least 1");
}

PlausibleClock::PlausibleClock(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error("plausible clock modulus must be at least 1");
}

PlausibleClock pc_event(const PlausibleClock& c, std::size_t entry) {
  if (entry >= c.modulus()) throw Error("plausible entry out of range");
  std::vector<std::uint64_t> e(c.entries().begin(), c.entries().end());
  ++e[entry];
  return PlausibleClock(std::move(e));
}

PlausibleClock pc_merge(const PlausibleClock& x, const PlausibleClock& y) {
  if (x.modulus() != y.modulus()) throw Error("plausible clocks with different moduli");
  std::vector<std::uint64_t> e(x.modulus());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(x[i], y[i]);
  return PlausibleClock(std::move(e));
}

Order pc_relation(const PlausibleClock& x, const PlausibleClock& y) {
  if (x.modulus() != y.modulus()) throw Error("plausible clocks with different moduli");
  bool less = false;
  bool greater = false;
  for (std::size_t i = 0; i < x.modulus(); ++i) {
    less |= x[i] < y[i];
    greater |= x[i] > y[i];
  }
  if (less && greater) return Order::Concurrent;
  if (less) return Order::Before;
  if (greater) return Order::After;
  return Order::Indistinguishable;
}

std::string to_string(const PlausibleClock& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.modulus(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + "]";
}

}  // namespace causality
