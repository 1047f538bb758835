#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "causality/event_id.hpp"
#include "causality/order.hpp"
#include "causality/trace.hpp"

namespace causality {

/// Directed acyclic graph of events; happened-before is path reachability.
///
/// Vertices must be added after all their predecessors, so insertion order
/// is a topological order and cycles cannot be built. Reachability is kept as
/// per-vertex ancestor bitsets.
class EventGraph {
 public:
  using Vertex = std::size_t;

  Vertex add_vertex(EventId id, std::span<const Vertex> predecessors = {});

  std::size_t size() const noexcept { return ids_.size(); }
  const EventId& id(Vertex v) const { return ids_.at(v); }
  std::optional<Vertex> find(const EventId& id) const;
  /// Throws `Error` for an unknown event id.
  Vertex at(const EventId& id) const;

  const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }
  bool has_edge(const EventId& from, const EventId& to) const;

  /// True iff a non-empty directed path leads from `from` to `to`.
  bool reaches(Vertex from, Vertex to) const;

 private:
  std::vector<EventId> ids_;
  std::map<EventId, Vertex> index_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<std::uint64_t>> ancestors_;
};

/// Event graph of a trace plus the vertex generated by each step.
struct TraceGraph {
  EventGraph graph;
  std::vector<std::optional<EventGraph::Vertex>> step_vertex;
};

/// Plain traces: program order on each node plus one edge per delivered
/// message. Client/server traces: a Put depends on everything its client
/// obtained at its most recent Get, and a server's knowledge is the set of
/// Puts it received directly or through Sync.
TraceGraph build_event_graph(const ExecutionTrace& trace);

Order oracle_relation(const EventGraph& graph, EventGraph::Vertex x, EventGraph::Vertex y);
Order oracle_relation(const EventGraph& graph, const EventId& x, const EventId& y);

}  // namespace causality
