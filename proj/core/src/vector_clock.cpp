#include "causality/vector_clock.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "causality/error.hpp"

namespace causality {
namespace {

void require_same(const UniversePtr& a, const UniversePtr& b) {
  if (!same_universe(a, b)) throw Error("clocks belong to different node universes");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses "[n,n,...]" and returns the counters plus whatever follows the `]`.
std::pair<std::vector<std::uint64_t>, std::string_view> parse_bracketed(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.front() != '[') throw Error("vector must start with '['");
  const auto close = text.find(']');
  if (close == std::string_view::npos) throw Error("vector is missing ']'");
  auto body = text.substr(1, close - 1);
  std::vector<std::uint64_t> counts;
  if (!trim(body).empty()) {
    std::size_t pos = 0;
    while (true) {
      auto comma = body.find(',', pos);
      auto item = trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
        throw Error("invalid vector entry '" + std::string(item) + "'");
      }
      counts.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return {std::move(counts), trim(text.substr(close + 1))};
}

}  // namespace

VectorClock::VectorClock(UniversePtr universe)
    : universe_(std::move(universe)), counts_(universe_ ? universe_->size() : 0, 0) {
  if (!universe_) throw Error("vector clock needs a universe");
}

VectorClock::VectorClock(UniversePtr universe, std::vector<std::uint64_t> counts)
    : universe_(std::move(universe)), counts_(std::move(counts)) {
  if (!universe_) throw Error("vector clock needs a universe");
  if (counts_.size() != universe_->size()) {
    throw Error("vector has " + std::to_string(counts_.size()) + " entries, universe has " +
                std::to_string(universe_->size()));
  }
}

std::uint64_t VectorClock::at(std::string_view node) const {
  return counts_[universe_->index_of(node)];
}

bool VectorClock::operator==(const VectorClock& other) const {
  return same_universe(universe_, other.universe_) && counts_ == other.counts_;
}

std::pair<VectorClock, EventId> vc_event(const VectorClock& v, std::string_view node) {
  const auto i = v.universe()->index_of(node);
  std::vector<std::uint64_t> counts(v.counts().begin(), v.counts().end());
  ++counts[i];
  EventId id{std::string(node), counts[i]};
  return {VectorClock(v.universe(), std::move(counts)), std::move(id)};
}

VectorClock vc_merge(const VectorClock& x, const VectorClock& y) {
  require_same(x.universe(), y.universe());
  std::vector<std::uint64_t> counts(x.size());
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = std::max(x[i], y[i]);
  return VectorClock(x.universe(), std::move(counts));
}

Order vc_relation(const VectorClock& x, const VectorClock& y) {
  require_same(x.universe(), y.universe());
  bool less = false;
  bool greater = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) less = true;
    if (x[i] > y[i]) greater = true;
  }
  if (less && greater) return Order::Concurrent;
  if (less) return Order::Before;
  if (greater) return Order::After;
  return Order::Equal;
}

std::set<EventId> vc_subtract(const VectorClock& x, const VectorClock& y) {
  require_same(x.universe(), y.universe());
  std::set<EventId> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (auto k = y[i] + 1; k <= x[i]; ++k) out.insert(EventId{x.universe()->name(i), k});
  }
  return out;
}

CausalHistory vc_expand(const VectorClock& v) {
  std::set<EventId> events;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::uint64_t k = 1; k <= v[i]; ++k) events.insert(EventId{v.universe()->name(i), k});
  }
  return CausalHistory(std::move(events));
}

VectorClock vc_compact(const CausalHistory& h, UniversePtr universe) {
  std::vector<std::uint64_t> counts(universe->size(), 0);
  std::vector<std::uint64_t> members(universe->size(), 0);
  for (const auto& e : h.events()) {
    const auto i = universe->index_of(e.node);
    counts[i] = std::max(counts[i], e.counter);
    ++members[i];
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != members[i]) {
      throw Error("history has a gap at node '" + universe->name(i) + "'");
    }
  }
  return VectorClock(std::move(universe), std::move(counts));
}

DottedClock::DottedClock(VectorClock context, EventId dot)
    : context_(std::move(context)), dot_(std::move(dot)) {
  if (dot_.counter <= context_.at(dot_.node)) {
    throw Error("dot " + dot_.str() + " is not outside the context " + to_string(context_));
  }
}

bool DottedClock::covers(const EventId& event) const {
  if (event == dot_) return true;
  auto i = universe()->find(event.node);
  return i && event.counter >= 1 && event.counter <= context_[*i];
}

VectorClock DottedClock::raised() const {
  std::vector<std::uint64_t> counts(context_.counts().begin(), context_.counts().end());
  auto& entry = counts[universe()->index_of(dot_.node)];
  entry = std::max(entry, dot_.counter);
  return VectorClock(universe(), std::move(counts));
}

DottedClock dvc_from_vector(const VectorClock& v, std::string_view last) {
  const auto i = v.universe()->index_of(last);
  if (v[i] == 0) throw Error("entry for '" + std::string(last) + "' is zero; no event to dot");
  std::vector<std::uint64_t> counts(v.counts().begin(), v.counts().end());
  EventId dot{std::string(last), counts[i]};
  --counts[i];
  return DottedClock(VectorClock(v.universe(), std::move(counts)), std::move(dot));
}

VectorClock dvc_to_vector(const DottedClock& d) { return d.raised(); }

CausalHistory dvc_expand(const DottedClock& d) {
  auto events = vc_expand(d.context()).events();
  events.insert(d.dot());
  return CausalHistory(std::move(events), d.dot());
}

Order dvc_relation(const DottedClock& x, const DottedClock& y) {
  require_same(x.universe(), y.universe());
  if (x.dot() == y.dot()) {
    return x.context() == y.context() ? Order::Equal : vc_relation(x.raised(), y.raised());
  }
  const bool x_in_y = y.covers(x.dot());
  const bool y_in_x = x.covers(y.dot());
  if (x_in_y && !y_in_x) return Order::Before;
  if (y_in_x && !x_in_y) return Order::After;
  if (!x_in_y && !y_in_x) return Order::Concurrent;
  // Mutual coverage cannot arise from a replay; fall back to the vectors.
  return vc_relation(x.raised(), y.raised());
}

std::string to_string(const VectorClock& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
  return out;
}

std::string to_string(const DottedClock& d) { return to_string(d.context()) + d.dot().str(); }

VectorClock parse_vector_clock(std::string_view text, UniversePtr universe) {
  auto [counts, rest] = parse_bracketed(text);
  if (!rest.empty()) throw Error("trailing text after vector: '" + std::string(rest) + "'");
  return VectorClock(std::move(universe), std::move(counts));
}

DottedClock parse_dotted_clock(std::string_view text, UniversePtr universe) {
  auto [counts, rest] = parse_bracketed(text);
  if (rest.empty()) throw Error("dotted clock needs a dot after the vector");
  auto dot = universe->parse_event(rest);
  return DottedClock(VectorClock(universe, std::move(counts)), std::move(dot));
}

}  // namespace causality
