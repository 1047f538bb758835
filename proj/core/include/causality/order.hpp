#pragma once

#include <string_view>

namespace causality {

/// Outcome of comparing two events (or the clocks tagging them).
///
/// `Indistinguishable` is only produced by mechanisms that can map distinct
/// events to identical clock values (plausible clocks).
enum class Order { Before, After, Equal, Concurrent, Indistinguishable };

constexpr Order reverse(Order o) noexcept {
  switch (o) {
    case Order::Before: return Order::After;
    case Order::After: return Order::Before;
    default: return o;
  }
}

constexpr std::string_view to_string(Order o) noexcept {
  switch (o) {
    case Order::Before: return "before";
    case Order::After: return "after";
    case Order::Equal: return "equal";
    case Order::Concurrent: return "concurrent";
    case Order::Indistinguishable: return "indistinguishable";
  }
  return "?";
}

}  // namespace causality
