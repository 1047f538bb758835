#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "causality/error.hpp"
#include "causality/generator.hpp"
#include "causality/harness.hpp"
#include "causality/render.hpp"
#include "causality/trace.hpp"

namespace causality::cli {
namespace {

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> names;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

AreaDiagram diagram_for(const ExecutionTrace& trace, const ReplayResult& result,
                        const TaggedEvent& event) {
  return std::visit(
      [&](const auto& v) -> AreaDiagram {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CausalHistory>) {
          return diagram_of(v, *trace.universe(), event.node);
        } else if constexpr (std::is_same_v<T, VectorClock>) {
          return diagram_of(v, event.node);
        } else if constexpr (std::is_same_v<T, DottedClock>) {
          return diagram_of(v);
        } else if constexpr (std::is_same_v<T, LamportStamp>) {
          return diagram_of(v);
        } else if constexpr (std::is_same_v<T, PlausibleClock>) {
          return diagram_of(v, pc_assign(trace.nodes, v.modulus()).entry_of(event.node));
        } else {
          unsigned depth = 0;
          for (const auto& e : result.events) {
            const auto& s = std::get<ItcStamp>(e.value);
            depth = std::max({depth, s.id.depth(), s.events.depth()});
          }
          return diagram_of(v, depth);
        }
      },
      event.value);
}

struct Options {
  std::string trace_path = "-";
  std::string mechanism = "vc";
  std::string format;
  std::string at;
  std::string vector;
  std::string names;
  std::size_t nodes = 3;
  std::size_t events = 20;
  double send_prob = 0.3;
  double relevant_prob = 1.0;
  std::uint64_t seed = 0;
  std::size_t clients = 0;
  std::size_t servers = 0;
  std::size_t max_undelivered = 8;
};

int do_check(const Options& o, std::istream& in, std::ostream& out) {
  const auto trace = parse_trace(read_source(o.trace_path, in));
  const auto mechanism = Mechanism::parse(o.mechanism);
  if (!applicable(trace, mechanism)) {
    throw ModeError(mechanism.name() + " does not apply to this trace");
  }
  const auto rows = compare_all(trace, std::vector<Mechanism>{mechanism});
  out << (o.format == "kv" ? format_key_values(rows) : format_table(rows));
  return rows.front().passed ? kOk : kContractFailed;
}

int do_compare(const Options& o, std::istream& in, std::ostream& out) {
  const auto trace = parse_trace(read_source(o.trace_path, in));
  const auto mechanisms = standard_mechanisms();
  const auto rows = compare_all(trace, mechanisms);
  out << (o.format == "kv" ? format_key_values(rows) : format_table(rows));
  return kOk;
}

int do_replay(const Options& o, std::istream& in, std::ostream& out) {
  const auto trace = parse_trace(read_source(o.trace_path, in));
  const auto result = replay(trace, Mechanism::parse(o.mechanism));
  for (const auto& e : result.events) out << e.id << ' ' << to_string(e.value) << '\n';
  for (const auto& [node, replica] : result.replicas) {
    out << "final " << node << ' ';
    for (std::size_t i = 0; i < replica.siblings().size(); ++i) {
      out << (i ? "," : "") << to_string(replica.siblings()[i].history);
    }
    out << '\n';
  }
  for (const auto& [node, server] : result.servers) {
    out << "final " << node << ' ' << to_string(server) << '\n';
  }
  return kOk;
}

int do_render(const Options& o, std::istream& in, std::ostream& out) {
  const auto trace = parse_trace(read_source(o.trace_path, in));
  if (!o.format.empty() && o.format != "ascii") throw Error("unsupported format '" + o.format + "'");
  const auto result = replay(trace, Mechanism::parse(o.mechanism));
  const auto wanted = trace.universe()->parse_event(o.at);
  const auto* event = result.find(wanted);
  if (!event) throw Error("no event " + o.at + " under " + result.mechanism.name());
  out << event->id << ' ' << to_string(event->value) << '\n';
  out << render_ascii(diagram_for(trace, result, *event));
  return kOk;
}

int do_simulate(const Options& o, std::ostream& out) {
  if (o.clients > 0 || o.servers > 0) {
    ClientServerOptions cs;
    cs.client_count = o.clients;
    cs.server_count = o.servers;
    cs.step_count = o.events;
    cs.seed = o.seed;
    out << serialize_trace(generate_client_server_trace(cs));
    return kOk;
  }
  GeneratorOptions g;
  g.node_count = o.nodes;
  g.step_count = o.events;
  g.send_probability = o.send_prob;
  g.relevant_probability = o.relevant_prob;
  g.seed = o.seed;
  g.max_undelivered = o.max_undelivered;
  out << serialize_trace(generate_trace(g));
  return kOk;
}

int do_expand(const Options& o, std::ostream& out) {
  const auto bracket = o.vector.find(']');
  if (bracket == std::string::npos) throw Error("vector literal is missing ']'");
  std::vector<std::string> names = split_names(o.names);
  if (names.empty()) {
    const auto entries = std::count(o.vector.begin(), o.vector.begin() + bracket, ',') + 1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(entries); ++i) {
      names.push_back(default_node_name(i));
    }
  }
  const auto universe = make_universe(std::move(names));
  const bool dotted = o.vector.find_first_not_of(" \t", bracket + 1) != std::string::npos;
  const auto history = dotted ? dvc_expand(parse_dotted_clock(o.vector, universe))
                              : vc_expand(parse_vector_clock(o.vector, universe));
  out << to_string(history) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Causality tracking mechanisms checked against a happened-before oracle", "causal"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Check one mechanism against the oracle");
  check->add_option("trace", o.trace_path, "Trace file, or - for standard input")->required();
  check->add_option("--mechanism", o.mechanism, "Mechanism id")->required();
  check->add_option("--format", o.format, "table (default) or kv")
      ->check(CLI::IsMember({"table", "kv"}));

  auto* compare = app.add_subcommand("compare", "Conformance table for every mechanism");
  compare->add_option("trace", o.trace_path, "Trace file, or - for standard input")->required();
  compare->add_option("--format", o.format, "table (default) or kv")
      ->check(CLI::IsMember({"table", "kv"}));

  auto* replay_cmd = app.add_subcommand("replay", "Print the clock of every tagged event");
  replay_cmd->add_option("trace", o.trace_path, "Trace file, or - for standard input")->required();
  replay_cmd->add_option("--mechanism", o.mechanism, "Mechanism id")->required();

  auto* render = app.add_subcommand("render", "Draw the area diagram of one event's clock");
  render->add_option("trace", o.trace_path, "Trace file, or - for standard input")->required();
  render->add_option("--at", o.at, "Event name, e.g. b2")->required();
  render->add_option("--mechanism", o.mechanism, "Mechanism id");
  render->add_option("--format", o.format, "ascii (default)");

  auto* simulate = app.add_subcommand("simulate", "Print a random trace");
  simulate->add_option("--nodes", o.nodes, "Number of peer nodes")->check(CLI::PositiveNumber);
  simulate->add_option("--events", o.events, "Number of steps");
  simulate->add_option("--send-prob", o.send_prob, "Send probability")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--relevant-prob", o.relevant_prob, "Relevant-step probability")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--max-undelivered", o.max_undelivered, "Cap on in-flight messages");
  simulate->add_option("--clients", o.clients, "Client count (client/server trace)");
  simulate->add_option("--servers", o.servers, "Server count (client/server trace)");

  auto* expand = app.add_subcommand("expand", "Expand a vector clock into its causal history");
  expand->add_option("vector", o.vector, "Vector literal such as [2,3,3] or [2,1,0]b2")->required();
  expand->add_option("--names", o.names, "Comma-separated node names (default a,b,c,...)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "causal: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*check) return do_check(o, in, out);
    if (*compare) return do_compare(o, in, out);
    if (*replay_cmd) return do_replay(o, in, out);
    if (*render) return do_render(o, in, out);
    if (*simulate) return do_simulate(o, out);
    if (*expand) return do_expand(o, out);
  } catch (const Error& e) {
    err << "causal: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace causality::cli
