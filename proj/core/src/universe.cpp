#include "causality/universe.hpp"

#include <algorithm>
#include <cctype>

#include "causality/error.hpp"

namespace causality {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw Error("duplicate node '" + names_[i] + "' in universe");
    }
  }
}

std::optional<std::size_t> Universe::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Universe::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error("unknown node '" + std::string(name) + "'");
}

EventId Universe::parse_event(std::string_view text) const {
  std::optional<EventId> best;
  for (const auto& name : names_) {
    if (text.size() <= name.size() || !text.starts_with(name)) continue;
    auto digits = text.substr(name.size());
    if (!std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
      continue;
    }
    if (digits.size() > 18) continue;
    if (!best || name.size() > best->node.size()) {
      best = EventId{name, std::stoull(std::string(digits))};
    }
  }
  if (!best || best->counter == 0) {
    throw Error("'" + std::string(text) + "' does not name an event of this universe");
  }
  return *best;
}

}  // namespace causality
