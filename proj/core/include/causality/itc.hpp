#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "causality/order.hpp"

namespace causality {

/// Ownership of a region of the unit interval: leaf 0, leaf 1, or a pair
/// splitting the interval in halves. Always kept normalized: `(0,0)` and
/// `(1,1)` collapse to leaves.
class IdTree {
 public:
  static IdTree zero() { return IdTree(false); }
  static IdTree one() { return IdTree(true); }
  /// Builds a pair, collapsing `(0,0)` and `(1,1)`.
  static IdTree pair(IdTree left, IdTree right);

  bool is_leaf() const noexcept { return children_ == nullptr; }
  bool is_zero() const noexcept { return is_leaf() && !owned_; }
  bool is_one() const noexcept { return is_leaf() && owned_; }
  const IdTree& left() const;
  const IdTree& right() const;
  unsigned depth() const;

  bool operator==(const IdTree& other) const;

 private:
  struct Children;
  explicit IdTree(bool owned) : owned_(owned) {}

  bool owned_ = false;
  std::shared_ptr<const Children> children_;
};

/// Event counts over the unit interval: a leaf height, or a base height plus
/// two relative subtrees for the halves.
class EventTree {
 public:
  EventTree() = default;
  static EventTree leaf(std::uint64_t n) { return EventTree(n); }
  /// Raw node; use `normalized()` to obtain the canonical form.
  static EventTree node(std::uint64_t base, EventTree left, EventTree right);

  bool is_leaf() const noexcept { return children_ == nullptr; }
  std::uint64_t base() const noexcept { return base_; }
  const EventTree& left() const;
  const EventTree& right() const;
  unsigned depth() const;

  std::uint64_t min() const;
  std::uint64_t max() const;
  EventTree lifted(std::uint64_t by) const;
  /// Canonical form: equal-leaf children collapse and common minima move
  /// into the base.
  EventTree normalized() const;

  bool operator==(const EventTree& other) const;

 private:
  struct Children;
  explicit EventTree(std::uint64_t n) : base_(n) {}

  std::uint64_t base_ = 0;
  std::shared_ptr<const Children> children_;
};

struct ItcStamp {
  IdTree id = IdTree::zero();
  EventTree events;

  bool operator==(const ItcStamp&) const = default;
};

ItcStamp itc_seed();
/// Splits the identity; both halves keep the event tree. Throws `Error` on
/// an identity-less stamp.
std::pair<ItcStamp, ItcStamp> itc_fork(const ItcStamp& s);
/// Inflates the event tree over the shallowest owned leaf. Throws on an
/// identity-less stamp.
ItcStamp itc_event(const ItcStamp& s);
/// Sums identities and joins event trees. Throws if the identities overlap.
ItcStamp itc_join(const ItcStamp& x, const ItcStamp& y);
/// Anonymous copy carrying only the event tree, for messages.
ItcStamp itc_peek(const ItcStamp& s);
bool itc_leq(const ItcStamp& x, const ItcStamp& y);
Order itc_relation(const ItcStamp& x, const ItcStamp& y);

IdTree id_sum(const IdTree& a, const IdTree& b);
EventTree event_join(const EventTree& a, const EventTree& b);
bool event_leq(const EventTree& a, const EventTree& b);

/// Text forms. Ids: `0`, `1`, `(l,r)`. Events: `n` or `(n, l, r)`.
/// Stamps: `(id; events)`, e.g. `((1,0); (1, 2, 0))`. Parsing ignores
/// whitespace and normalizes.
std::string to_string(const IdTree& id);
std::string to_string(const EventTree& e);
std::string to_string(const ItcStamp& s);
IdTree parse_id_tree(std::string_view text);
EventTree parse_event_tree(std::string_view text);
ItcStamp parse_itc_stamp(std::string_view text);

}  // namespace causality
