#include "causality/event_graph.hpp"

#include <algorithm>
#include <set>

#include "causality/error.hpp"

namespace causality {

EventGraph::Vertex EventGraph::add_vertex(EventId id, std::span<const Vertex> predecessors) {
  const Vertex v = ids_.size();
  if (index_.contains(id)) throw Error("duplicate event " + id.str());

  std::vector<Vertex> preds(predecessors.begin(), predecessors.end());
  std::sort(preds.begin(), preds.end());
  preds.erase(std::unique(preds.begin(), preds.end()), preds.end());

  std::vector<std::uint64_t> ancestors((v + 63) / 64, 0);
  for (Vertex p : preds) {
    if (p >= v) throw Error("predecessor of " + id.str() + " is not an existing vertex");
    const auto& pa = ancestors_[p];
    for (std::size_t w = 0; w < pa.size(); ++w) ancestors[w] |= pa[w];
    ancestors[p / 64] |= std::uint64_t{1} << (p % 64);
    edges_.emplace_back(p, v);
  }

  index_.emplace(id, v);
  ids_.push_back(std::move(id));
  ancestors_.push_back(std::move(ancestors));
  return v;
}

std::optional<EventGraph::Vertex> EventGraph::find(const EventId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EventGraph::Vertex EventGraph::at(const EventId& id) const {
  if (auto v = find(id)) return *v;
  throw Error("unknown event " + id.str());
}

bool EventGraph::has_edge(const EventId& from, const EventId& to) const {
  auto f = find(from);
  auto t = find(to);
  if (!f || !t) return false;
  return std::find(edges_.begin(), edges_.end(), std::pair{*f, *t}) != edges_.end();
}

bool EventGraph::reaches(Vertex from, Vertex to) const {
  if (to >= ancestors_.size() || from >= to) return false;
  return (ancestors_[to][from / 64] >> (from % 64)) & 1U;
}

Order oracle_relation(const EventGraph& graph, EventGraph::Vertex x, EventGraph::Vertex y) {
  if (x >= graph.size() || y >= graph.size()) throw Error("unknown event vertex");
  if (x == y) return Order::Equal;
  if (graph.reaches(x, y)) return Order::Before;
  if (graph.reaches(y, x)) return Order::After;
  return Order::Concurrent;
}

Order oracle_relation(const EventGraph& graph, const EventId& x, const EventId& y) {
  return oracle_relation(graph, graph.at(x), graph.at(y));
}

namespace {

TraceGraph plain_graph(const ExecutionTrace& trace, const std::vector<std::optional<EventId>>& ids) {
  TraceGraph out;
  std::map<std::string, EventGraph::Vertex> last;
  std::map<std::string, EventGraph::Vertex> send_vertex;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    std::vector<EventGraph::Vertex> preds;
    if (auto it = last.find(s.actor); it != last.end()) preds.push_back(it->second);
    if (s.kind == StepKind::Receive) preds.push_back(send_vertex.at(s.message));
    auto v = out.graph.add_vertex(*ids[i], preds);
    last[s.actor] = v;
    if (s.kind == StepKind::Send) send_vertex[s.message] = v;
    out.step_vertex.push_back(v);
  }
  return out;
}

// Knowledge frontiers: the set of Put vertices whose effects a node has seen.
TraceGraph client_server_graph(const ExecutionTrace& trace,
                               const std::vector<std::optional<EventId>>& ids) {
  TraceGraph out;
  std::map<std::string, std::set<EventGraph::Vertex>> known;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    std::optional<EventGraph::Vertex> vertex;
    switch (s.kind) {
      case StepKind::Get:
        known[s.actor] = known[s.peer];
        break;
      case StepKind::Put: {
        const auto& ctx = known[s.actor];
        std::vector<EventGraph::Vertex> preds(ctx.begin(), ctx.end());
        vertex = out.graph.add_vertex(*ids[i], preds);
        known[s.peer].insert(*vertex);
        break;
      }
      case StepKind::Sync: {
        const auto src = known[s.actor];
        known[s.peer].insert(src.begin(), src.end());
        break;
      }
      default:
        throw Error("unexpected step in client/server trace");
    }
    out.step_vertex.push_back(vertex);
  }
  return out;
}

}  // namespace

TraceGraph build_event_graph(const ExecutionTrace& trace) {
  const auto ids = step_events(trace);
  return trace.client_server() ? client_server_graph(trace, ids) : plain_graph(trace, ids);
}

}  // namespace causality
