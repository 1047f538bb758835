#include "causality/render.hpp"

#include <algorithm>
#include <map>

#include "causality/error.hpp"

namespace causality {

AreaDiagram diagram_of(const VectorClock& v, std::optional<std::string_view> owner) {
  AreaDiagram d;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& name = v.universe()->name(i);
    d.columns.push_back({name, v[i], std::nullopt, owner && *owner == name});
  }
  return d;
}

AreaDiagram diagram_of(const DottedClock& dc, std::optional<std::string_view> owner) {
  auto d = diagram_of(dc.context(), owner ? owner : std::optional<std::string_view>(dc.dot().node));
  d.columns[dc.universe()->index_of(dc.dot().node)].dot = dc.dot().counter;
  return d;
}

AreaDiagram diagram_of(const CausalHistory& h, const Universe& universe,
                       std::optional<std::string_view> owner) {
  std::vector<std::uint64_t> height(universe.size(), 0);
  std::vector<std::uint64_t> members(universe.size(), 0);
  for (const auto& e : h.events()) {
    if (h.dot() && e == *h.dot()) continue;
    const auto i = universe.index_of(e.node);
    height[i] = std::max(height[i], e.counter);
    ++members[i];
  }
  if (!owner && h.dot()) owner = h.dot()->node;
  AreaDiagram d;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (height[i] != members[i]) {
      throw Error("history has a gap at node '" + universe.name(i) + "'; no area form");
    }
    const auto& name = universe.name(i);
    d.columns.push_back({name, height[i], std::nullopt, owner && *owner == name});
  }
  if (h.dot()) d.columns[universe.index_of(h.dot()->node)].dot = h.dot()->counter;
  return d;
}

AreaDiagram diagram_of(const LamportStamp& s) {
  return {{{"L", s.clock.value, std::nullopt, true}}};
}

AreaDiagram diagram_of(const PlausibleClock& c, std::optional<std::size_t> owned_entry) {
  AreaDiagram d;
  for (std::size_t i = 0; i < c.modulus(); ++i) {
    d.columns.push_back({std::to_string(i), c[i], std::nullopt, owned_entry && *owned_entry == i});
  }
  return d;
}

namespace {

void fill_events(const EventTree& e, std::uint64_t offset, unsigned depth, std::size_t first,
                 std::size_t count, std::vector<AreaColumn>& cols) {
  const auto value = offset + e.base();
  if (e.is_leaf() || depth == 0) {
    // A subtree below the discretization depth is summarized by its floor.
    const auto h = e.is_leaf() ? value : offset + e.min();
    for (std::size_t i = first; i < first + count; ++i) cols[i].height = h;
    return;
  }
  fill_events(e.left(), value, depth - 1, first, count / 2, cols);
  fill_events(e.right(), value, depth - 1, first + count / 2, count / 2, cols);
}

void fill_ids(const IdTree& id, unsigned depth, std::size_t first, std::size_t count,
              std::vector<AreaColumn>& cols) {
  if (id.is_leaf() || depth == 0) {
    const bool owned = id.is_one() || (!id.is_leaf() && !id.is_zero());
    for (std::size_t i = first; i < first + count; ++i) cols[i].owned = owned;
    return;
  }
  fill_ids(id.left(), depth - 1, first, count / 2, cols);
  fill_ids(id.right(), depth - 1, first + count / 2, count / 2, cols);
}

}  // namespace

AreaDiagram diagram_of(const ItcStamp& s, std::optional<unsigned> depth) {
  const unsigned d = depth.value_or(std::max(s.id.depth(), s.events.depth()));
  if (d > 16) throw Error("itc discretization depth too large to draw");
  const std::size_t count = std::size_t{1} << d;
  AreaDiagram out;
  out.columns.resize(count);
  for (std::size_t i = 0; i < count; ++i) out.columns[i].label = std::to_string(i % 10);
  fill_events(s.events, 0, d, 0, count, out.columns);
  fill_ids(s.id, d, 0, count, out.columns);
  return out;
}

std::string render_ascii(const AreaDiagram& d) {
  std::uint64_t top = 0;
  for (const auto& c : d.columns) top = std::max({top, c.height, c.dot.value_or(0)});

  std::string out;
  auto row = [&](auto cell) {
    std::string line;
    for (std::size_t i = 0; i < d.columns.size(); ++i) {
      if (i) line += ' ';
      line += cell(d.columns[i]);
    }
    out += line;
    out += '\n';
  };
  for (auto level = top; level >= 1; --level) {
    row([level](const AreaColumn& c) {
      if (c.dot && *c.dot == level) return 'o';
      return level <= c.height ? '#' : ' ';
    });
  }
  row([](const AreaColumn& c) { return c.owned ? '^' : '-'; });
  row([](const AreaColumn& c) { return c.label.empty() ? '?' : c.label.front(); });
  return out;
}

}  // namespace causality
