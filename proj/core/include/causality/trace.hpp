#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causality/event_id.hpp"
#include "causality/universe.hpp"

namespace causality {

enum class StepKind { Local, Send, Receive, Get, Put, Sync };

/// One line of an execution script.
///
/// `peer` is set for Get/Put (the server) and Sync (the destination server);
/// `message` is set for Send/Receive. `line` is bookkeeping from parsing and
/// does not take part in equality.
struct TraceStep {
  StepKind kind = StepKind::Local;
  std::string actor;
  std::string peer;
  std::string message;
  bool relevant = false;
  std::size_t line = 0;

  bool operator==(const TraceStep& o) const {
    return kind == o.kind && actor == o.actor && peer == o.peer && message == o.message &&
           relevant == o.relevant;
  }
};

/// A linearized distributed execution.
///
/// Traces come in two modes. Plain traces use Local/Send/Receive over peer
/// nodes. Client/server traces declare `clients` and `servers` and use only
/// Get/Put/Sync, where the unique event names are minted by servers at Put.
struct ExecutionTrace {
  std::vector<std::string> nodes;
  std::vector<std::string> clients;
  std::vector<std::string> servers;
  std::vector<TraceStep> steps;

  bool client_server() const noexcept { return !servers.empty(); }

  /// All nodes in declaration order.
  UniversePtr universe() const;
  /// Servers only, ordered by their position in `nodes`.
  UniversePtr server_universe() const;

  bool operator==(const ExecutionTrace&) const = default;
};

/// Parses and validates the line-oriented trace format. Throws `ParseError`.
ExecutionTrace parse_trace(std::string_view text);

/// Canonical text form; `parse_trace(serialize_trace(t)) == t`.
std::string serialize_trace(const ExecutionTrace& trace);

/// Name of the event each step generates under full causality tracking, or
/// nullopt for steps that generate none (Get and Sync in client/server mode).
///
/// Plain mode: every step is an event named after its actor. Client/server
/// mode: every Put is an event named after the server that receives it.
std::vector<std::optional<EventId>> step_events(const ExecutionTrace& trace);

char step_code(StepKind kind) noexcept;

}  // namespace causality
