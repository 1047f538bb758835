#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causality/event_id.hpp"

namespace causality {

/// Ordered set of node names that fixes vector positions.
class Universe {
 public:
  explicit Universe(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws `Error` for names outside the universe.
  std::size_t index_of(std::string_view name) const;

  /// Splits text such as `b12` into a node of this universe and a counter.
  /// The longest matching node name wins: with nodes `c` and `c1`, `c13`
  /// is event 3 of `c1`.
  EventId parse_event(std::string_view text) const;

  bool operator==(const Universe& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

inline UniversePtr make_universe(std::vector<std::string> names) {
  return std::make_shared<const Universe>(std::move(names));
}

/// Same universe either by identity or by equal name lists.
inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace causality
