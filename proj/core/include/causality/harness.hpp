#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "causality/causal_history.hpp"
#include "causality/itc.hpp"
#include "causality/scalar_clocks.hpp"
#include "causality/trace.hpp"
#include "causality/vector_clock.hpp"
#include "causality/version_store.hpp"

namespace causality {

enum class MechanismKind {
  CausalHistory,
  VectorClock,
  DottedVectorClock,
  Lamport,
  Plausible,
  IntervalTreeClock,
  VersionVector,
  VersionVectorSiblings,
  DottedVersionVector,
};

/// Mechanism identifier as used on the command line: `ch`, `vc`, `dvc`,
/// `lamport`, `plausible:<k>`, `itc`, `vv`, `vv-sib`, `dvv`.
struct Mechanism {
  MechanismKind kind = MechanismKind::VectorClock;
  std::size_t modulus = 0;  // plausible only

  static Mechanism parse(std::string_view text);
  std::string name() const;

  /// Characterizing mechanisms must agree with the oracle on every pair;
  /// the rest only need to be consistent with it.
  bool characterizing() const noexcept;
  /// Whether tagged events are only the version-creating ones.
  bool relevant_only() const noexcept;
  bool needs_client_server() const noexcept {
    return kind == MechanismKind::DottedVersionVector;
  }

  bool operator==(const Mechanism&) const = default;
};

/// Default row order of `compare`.
std::vector<Mechanism> standard_mechanisms();

using ClockValue =
    std::variant<CausalHistory, VectorClock, DottedClock, LamportStamp, PlausibleClock, ItcStamp>;

/// Throws `Error` if the two values come from different mechanisms.
Order relation(const ClockValue& x, const ClockValue& y);
std::string to_string(const ClockValue& value);

struct TaggedEvent {
  std::size_t step = 0;
  EventId id;          // mechanism-level name of the event
  std::string node;    // node whose state the value belongs to
  ClockValue value;
};

struct ReplayResult {
  Mechanism mechanism;
  std::vector<TaggedEvent> events;
  /// Final peer replicas (`vv`, `vv-sib`).
  std::map<std::string, VersionReplica> replicas;
  /// Final servers (`dvv`).
  std::map<std::string, DvvServer, std::less<>> servers;

  const TaggedEvent* find(const EventId& id) const;
};

/// Invoked after every applied step with the partial result so far.
using StepObserver = std::function<void(std::size_t step, const ReplayResult& partial)>;

/// Tags each event-generating step with the mechanism's clock. Throws
/// `ModeError` when the trace mode does not fit the mechanism.
ReplayResult replay(const ExecutionTrace& trace, const Mechanism& mechanism,
                    const StepObserver& observer = {});

bool applicable(const ExecutionTrace& trace, const Mechanism& mechanism) noexcept;

struct ConformanceReport {
  std::string mechanism;
  std::size_t pairs = 0;
  std::size_t agree = 0;
  std::size_t falsely_ordered = 0;     // oracle concurrent, mechanism ordered
  std::size_t falsely_concurrent = 0;  // oracle ordered, mechanism concurrent
  std::size_t reversed = 0;            // ordered the wrong way round
  std::size_t indistinguishable = 0;   // distinct events reported Equal

  std::size_t errors() const noexcept {
    return falsely_ordered + falsely_concurrent + reversed + indistinguishable;
  }
  bool operator==(const ConformanceReport&) const = default;
};

/// One pair of tagged events, oriented by trace order.
struct PairOutcome {
  const TaggedEvent* first = nullptr;
  const TaggedEvent* second = nullptr;
  Order oracle = Order::Equal;
  Order mechanism = Order::Equal;
};

struct ConformanceOptions {
  /// 0 evaluates every pair; otherwise this many pairs are sampled (with a
  /// deterministic generator) when the full set is larger.
  std::size_t max_pairs = 0;
  std::uint64_t sample_seed = 0;
  /// Receives every evaluated pair when set.
  std::function<void(const PairOutcome&)> on_pair;
};

ConformanceReport conformance(const ExecutionTrace& trace, const Mechanism& mechanism,
                              const ConformanceOptions& options = {});

/// Classifies one pair into the report.
void classify(ConformanceReport& report, Order oracle, Order mechanism);

/// Characterizing mechanisms: no errors at all. Others: no reversed and no
/// falsely concurrent pairs.
bool meets_contract(const ConformanceReport& report, const Mechanism& mechanism);

/// A `compare` row; no report means the mechanism does not apply.
struct ReportRow {
  std::string mechanism;
  std::optional<ConformanceReport> report;
  bool passed = false;
};

std::vector<ReportRow> compare_all(const ExecutionTrace& trace,
                                   std::span<const Mechanism> mechanisms);

std::string format_table(std::span<const ReportRow> rows);
std::string format_key_values(std::span<const ReportRow> rows);

}  // namespace causality
