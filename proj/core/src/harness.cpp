#include "causality/harness.hpp"

#include <charconv>
#include <iomanip>
#include <random>
#include <sstream>

#include "causality/error.hpp"
#include "causality/event_graph.hpp"

namespace causality {

// --- mechanism ids ----------------------------------------------------------

Mechanism Mechanism::parse(std::string_view text) {
  static const std::pair<std::string_view, MechanismKind> simple[] = {
      {"ch", MechanismKind::CausalHistory},
      {"vc", MechanismKind::VectorClock},
      {"dvc", MechanismKind::DottedVectorClock},
      {"lamport", MechanismKind::Lamport},
      {"itc", MechanismKind::IntervalTreeClock},
      {"vv", MechanismKind::VersionVector},
      {"vv-sib", MechanismKind::VersionVectorSiblings},
      {"dvv", MechanismKind::DottedVersionVector},
  };
  for (const auto& [name, kind] : simple) {
    if (text == name) return {kind, 0};
  }
  constexpr std::string_view prefix = "plausible:";
  if (text.starts_with(prefix)) {
    auto digits = text.substr(prefix.size());
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 1) {
      return {MechanismKind::Plausible, k};
    }
    throw Error("plausible clock needs a modulus >= 1, got '" + std::string(digits) + "'");
  }
  throw Error("unknown mechanism '" + std::string(text) + "'");
}

std::string Mechanism::name() const {
  switch (kind) {
    case MechanismKind::CausalHistory: return "ch";
    case MechanismKind::VectorClock: return "vc";
    case MechanismKind::DottedVectorClock: return "dvc";
    case MechanismKind::Lamport: return "lamport";
    case MechanismKind::Plausible: return "plausible:" + std::to_string(modulus);
    case MechanismKind::IntervalTreeClock: return "itc";
    case MechanismKind::VersionVector: return "vv";
    case MechanismKind::VersionVectorSiblings: return "vv-sib";
    case MechanismKind::DottedVersionVector: return "dvv";
  }
  return "?";
}

bool Mechanism::characterizing() const noexcept {
  return kind != MechanismKind::Lamport && kind != MechanismKind::Plausible;
}

bool Mechanism::relevant_only() const noexcept {
  return kind == MechanismKind::VersionVector || kind == MechanismKind::VersionVectorSiblings ||
         kind == MechanismKind::DottedVersionVector;
}

std::vector<Mechanism> standard_mechanisms() {
  return {
      {MechanismKind::CausalHistory, 0},         {MechanismKind::VectorClock, 0},
      {MechanismKind::DottedVectorClock, 0},     {MechanismKind::Lamport, 0},
      {MechanismKind::Plausible, 2},             {MechanismKind::IntervalTreeClock, 0},
      {MechanismKind::VersionVector, 0},         {MechanismKind::VersionVectorSiblings, 0},
      {MechanismKind::DottedVersionVector, 0},
  };
}

// --- clock values -----------------------------------------------------------

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

Order relation(const ClockValue& x, const ClockValue& y) {
  return std::visit(
      [](const auto& a, const auto& b) -> Order {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (!std::is_same_v<A, B>) {
          throw Error("cannot compare clock values of different mechanisms");
        } else {
          return overloaded{
              [](const CausalHistory& p, const CausalHistory& q) { return ch_relation(p, q); },
              [](const VectorClock& p, const VectorClock& q) { return vc_relation(p, q); },
              [](const DottedClock& p, const DottedClock& q) { return dvc_relation(p, q); },
              [](const LamportStamp& p, const LamportStamp& q) { return lamport_relation(p, q); },
              [](const PlausibleClock& p, const PlausibleClock& q) { return pc_relation(p, q); },
              [](const ItcStamp& p, const ItcStamp& q) { return itc_relation(p, q); },
          }(a, b);
        }
      },
      x, y);
}

std::string to_string(const ClockValue& value) {
  return std::visit(
      overloaded{
          [](const LamportStamp& s) { return std::to_string(s.clock.value); },
          [](const auto& v) { return to_string(v); },
      },
      value);
}

const TaggedEvent* ReplayResult::find(const EventId& id) const {
  for (const auto& e : events) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

// --- replay -----------------------------------------------------------------

bool applicable(const ExecutionTrace& trace, const Mechanism& mechanism) noexcept {
  return trace.client_server() == mechanism.needs_client_server();
}

namespace {

// Full-causality replay: every step is an event, messages carry state.
template <class Policy>
void replay_full(const ExecutionTrace& trace, Policy& policy, ReplayResult& out,
                 const StepObserver& observer) {
  using State = typename Policy::State;
  const auto ids = step_events(trace);
  std::map<std::string, State> state;
  for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
    state.emplace(trace.nodes[i], policy.initial(i));
  }
  std::map<std::string, State> in_flight;

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    const auto& id = *ids[i];
    auto& current = state.at(step.actor);
    if (step.kind == StepKind::Receive) {
      current = policy.receive(current, in_flight.at(step.message), id);
    } else {
      current = policy.event(current, id);
    }
    if (step.kind == StepKind::Send) in_flight.insert_or_assign(step.message, policy.message(current));
    out.events.push_back({i, id, step.actor, policy.tag(current, id)});
    if (observer) observer(i, out);
  }
}

struct HistoryPolicy {
  using State = CausalHistory;
  State initial(std::size_t) const { return {}; }
  State event(const State& s, const EventId& id) const { return ch_new_event(s, id); }
  State receive(const State& s, const State& m, const EventId& id) const {
    return ch_new_event(ch_merge(s, m), id);
  }
  State message(const State& s) const { return s; }
  ClockValue tag(const State& s, const EventId&) const { return s; }
};

struct VectorPolicy {
  using State = VectorClock;
  UniversePtr universe;
  bool dotted = false;

  State initial(std::size_t) const { return VectorClock(universe); }
  State event(const State& s, const EventId& id) const { return vc_event(s, id.node).first; }
  State receive(const State& s, const State& m, const EventId& id) const {
    return vc_event(vc_merge(s, m), id.node).first;
  }
  State message(const State& s) const { return s; }
  ClockValue tag(const State& s, const EventId& id) const {
    if (dotted) return dvc_from_vector(s, id.node);
    return s;
  }
};

struct LamportPolicy {
  using State = ScalarClock;
  State initial(std::size_t) const { return {}; }
  State event(const State& s, const EventId&) const { return lamport_event(s); }
  State receive(const State& s, const State& m, const EventId&) const {
    return lamport_receive(s, m);
  }
  State message(const State& s) const { return s; }
  ClockValue tag(const State& s, const EventId& id) const { return LamportStamp{s, id}; }
};

struct PlausiblePolicy {
  using State = PlausibleClock;
  PlausibleAssignment assignment;

  State initial(std::size_t) const { return PlausibleClock(assignment.modulus()); }
  State event(const State& s, const EventId& id) const {
    return pc_event(s, assignment.entry_of(id.node));
  }
  State receive(const State& s, const State& m, const EventId& id) const {
    return pc_event(pc_merge(s, m), assignment.entry_of(id.node));
  }
  State message(const State& s) const { return s; }
  ClockValue tag(const State& s, const EventId&) const { return s; }
};

void distribute(const ItcStamp& stamp, std::size_t count, std::vector<ItcStamp>& out) {
  if (count == 1) {
    out.push_back(stamp);
    return;
  }
  auto [l, r] = itc_fork(stamp);
  distribute(l, (count + 1) / 2, out);
  distribute(r, count / 2, out);
}

struct ItcPolicy {
  using State = ItcStamp;
  std::vector<ItcStamp> initial_stamps;

  explicit ItcPolicy(std::size_t nodes) { distribute(itc_seed(), nodes, initial_stamps); }
  State initial(std::size_t i) const { return initial_stamps.at(i); }
  State event(const State& s, const EventId&) const { return itc_event(s); }
  State receive(const State& s, const State& m, const EventId&) const {
    return itc_event(itc_join(s, m));
  }
  State message(const State& s) const { return itc_peek(s); }
  ClockValue tag(const State& s, const EventId&) const { return s; }
};

void tag_newest(ReplayResult& out, std::size_t step, const VersionReplica& r) {
  const auto& rec = r.siblings().back();
  out.events.push_back({step, *rec.history.dot(), r.node(), rec.history});
}

void replay_version_vectors(const ExecutionTrace& trace, ReplayResult& out,
                            const StepObserver& observer) {
  for (const auto& n : trace.nodes) out.replicas.emplace(n, VersionReplica(n));
  std::map<std::string, CausalHistory> in_flight;

  auto current = [](const VersionReplica& r) {
    return r.siblings().empty() ? CausalHistory{} : r.siblings().front().history;
  };

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    auto& replica = out.replicas.at(step.actor);
    const auto before = replica.counter();
    if (step.kind == StepKind::Receive) {
      replica = vv_receive_merge(replica, in_flight.at(step.message));
      if (step.relevant && replica.counter() == before) replica = vv_update(replica, true);
    } else {
      replica = vv_update(replica, step.relevant);
    }
    if (replica.counter() != before) tag_newest(out, i, replica);
    if (step.kind == StepKind::Send) in_flight[step.message] = current(replica);
    if (observer) observer(i, out);
  }
}

void replay_siblings(const ExecutionTrace& trace, ReplayResult& out, const StepObserver& observer) {
  for (const auto& n : trace.nodes) out.replicas.emplace(n, VersionReplica(n));
  std::map<std::string, std::vector<VersionedRecord>> in_flight;

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    auto& replica = out.replicas.at(step.actor);
    const auto before = replica.counter();
    if (step.kind == StepKind::Receive) {
      replica = sibling_receive(replica, in_flight.at(step.message));
    }
    if (step.relevant) replica = sibling_update(replica);
    if (replica.counter() != before) tag_newest(out, i, replica);
    if (step.kind == StepKind::Send) in_flight[step.message] = replica.siblings();
    if (observer) observer(i, out);
  }
}

void replay_dvv(const ExecutionTrace& trace, ReplayResult& out, const StepObserver& observer) {
  const auto universe = trace.server_universe();
  for (const auto& s : universe->names()) out.servers.emplace(s, DvvServer(s, universe));
  std::map<std::string, ClientContext> contexts;
  for (const auto& c : trace.clients) contexts.emplace(c, empty_context(universe));

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    switch (step.kind) {
      case StepKind::Get:
        contexts.at(step.actor) = dvv_get(out.servers.at(step.peer)).context;
        break;
      case StepKind::Put: {
        auto& server = out.servers.at(step.peer);
        const EventId dot{server.node(), server.counter() + 1};
        server = dvv_put(server, contexts.at(step.actor), dot.str());
        out.events.push_back({i, dot, server.node(), server.siblings().back().clock});
        break;
      }
      case StepKind::Sync: {
        auto& dest = out.servers.at(step.peer);
        dest = dvv_sync(out.servers.at(step.actor), dest);
        break;
      }
      default:
        throw ModeError("dvv replays only get/put/sync steps");
    }
    if (observer) observer(i, out);
  }
}

}  // namespace

ReplayResult replay(const ExecutionTrace& trace, const Mechanism& mechanism,
                    const StepObserver& observer) {
  if (!applicable(trace, mechanism)) {
    throw ModeError(mechanism.needs_client_server()
                        ? mechanism.name() + " needs a trace with clients and servers"
                        : mechanism.name() + " needs a trace without client/server roles");
  }
  ReplayResult out;
  out.mechanism = mechanism;
  switch (mechanism.kind) {
    case MechanismKind::CausalHistory: {
      HistoryPolicy p;
      replay_full(trace, p, out, observer);
      break;
    }
    case MechanismKind::VectorClock:
    case MechanismKind::DottedVectorClock: {
      VectorPolicy p{trace.universe(), mechanism.kind == MechanismKind::DottedVectorClock};
      replay_full(trace, p, out, observer);
      break;
    }
    case MechanismKind::Lamport: {
      LamportPolicy p;
      replay_full(trace, p, out, observer);
      break;
    }
    case MechanismKind::Plausible: {
      PlausiblePolicy p{pc_assign(trace.nodes, mechanism.modulus)};
      replay_full(trace, p, out, observer);
      break;
    }
    case MechanismKind::IntervalTreeClock: {
      ItcPolicy p(trace.nodes.size());
      replay_full(trace, p, out, observer);
      break;
    }
    case MechanismKind::VersionVector:
      replay_version_vectors(trace, out, observer);
      break;
    case MechanismKind::VersionVectorSiblings:
      replay_siblings(trace, out, observer);
      break;
    case MechanismKind::DottedVersionVector:
      replay_dvv(trace, out, observer);
      break;
  }
  return out;
}

// --- conformance ------------------------------------------------------------

void classify(ConformanceReport& report, Order oracle, Order mechanism) {
  ++report.pairs;
  if (mechanism == Order::Equal || mechanism == Order::Indistinguishable) {
    ++report.indistinguishable;
  } else if (oracle == Order::Concurrent) {
    if (mechanism == Order::Concurrent) {
      ++report.agree;
    } else {
      ++report.falsely_ordered;
    }
  } else if (mechanism == oracle) {
    ++report.agree;
  } else if (mechanism == Order::Concurrent) {
    ++report.falsely_concurrent;
  } else {
    ++report.reversed;
  }
}

ConformanceReport conformance(const ExecutionTrace& trace, const Mechanism& mechanism,
                              const ConformanceOptions& options) {
  const auto result = replay(trace, mechanism);
  const auto tg = build_event_graph(trace);
  ConformanceReport report;
  report.mechanism = mechanism.name();

  const auto& events = result.events;
  auto evaluate = [&](std::size_t i, std::size_t j) {
    const auto vx = tg.step_vertex.at(events[i].step);
    const auto vy = tg.step_vertex.at(events[j].step);
    if (!vx || !vy) throw Error("tagged step has no vertex in the event graph");
    const auto oracle = oracle_relation(tg.graph, *vx, *vy);
    const auto mech = relation(events[i].value, events[j].value);
    classify(report, oracle, mech);
    if (options.on_pair) options.on_pair({&events[i], &events[j], oracle, mech});
  };

  const std::size_t n = events.size();
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  if (options.max_pairs == 0 || total <= options.max_pairs) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) evaluate(i, j);
    }
  } else {
    std::mt19937_64 engine(options.sample_seed);
    for (std::size_t k = 0; k < options.max_pairs; ++k) {
      auto i = static_cast<std::size_t>(engine() % n);
      auto j = static_cast<std::size_t>(engine() % (n - 1));
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      evaluate(i, j);
    }
  }
  return report;
}

bool meets_contract(const ConformanceReport& report, const Mechanism& mechanism) {
  if (mechanism.characterizing()) return report.errors() == 0;
  return report.reversed == 0 && report.falsely_concurrent == 0;
}

std::vector<ReportRow> compare_all(const ExecutionTrace& trace,
                                   std::span<const Mechanism> mechanisms) {
  std::vector<ReportRow> rows;
  for (const auto& m : mechanisms) {
    ReportRow row{m.name(), std::nullopt, false};
    if (applicable(trace, m)) {
      row.report = conformance(trace, m);
      row.passed = meets_contract(*row.report, m);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table(std::span<const ReportRow> rows) {
  const std::vector<std::string> headers = {"mechanism",          "pairs",    "agree",
                                            "falsely_ordered",    "falsely_concurrent",
                                            "reversed",           "indistinguishable",
                                            "verdict"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    if (!row.report) {
      cells.push_back({row.mechanism, "n/a", "n/a", "n/a", "n/a", "n/a", "n/a", "n/a"});
      continue;
    }
    const auto& r = *row.report;
    cells.push_back({row.mechanism, std::to_string(r.pairs), std::to_string(r.agree),
                     std::to_string(r.falsely_ordered), std::to_string(r.falsely_concurrent),
                     std::to_string(r.reversed), std::to_string(r.indistinguishable),
                     row.passed ? "pass" : "FAIL"});
  }
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) text += "  ";
      if (c == 0) {
        text += line[c] + std::string(width[c] - line[c].size(), ' ');
      } else {
        text += std::string(width[c] - line[c].size(), ' ') + line[c];
      }
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  emit(headers);
  for (const auto& line : cells) emit(line);
  return out.str();
}

std::string format_key_values(std::span<const ReportRow> rows) {
  std::ostringstream out;
  bool first = true;
  for (const auto& row : rows) {
    if (!first) out << '\n';
    first = false;
    out << "mechanism=" << row.mechanism << '\n';
    if (!row.report) {
      out << "applicable=false\n";
      continue;
    }
    const auto& r = *row.report;
    const auto m = Mechanism::parse(row.mechanism);
    out << "applicable=true\n"
        << "pairs=" << r.pairs << '\n'
        << "agree=" << r.agree << '\n'
        << "falsely_ordered=" << r.falsely_ordered << '\n'
        << "falsely_concurrent=" << r.falsely_concurrent << '\n'
        << "reversed=" << r.reversed << '\n'
        << "indistinguishable=" << r.indistinguishable << '\n'
        << "contract=" << (m.characterizing() ? "characterizing" : "consistent") << '\n'
        << "verdict=" << (row.passed ? "pass" : "fail") << '\n';
  }
  return out.str();
}

}  // namespace causality
