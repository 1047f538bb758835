#include "causality/generator.hpp"

#include <cctype>
#include <random>

#include "causality/error.hpp"

namespace causality {
namespace {

// Raw engine output only, so traces do not depend on the standard library's
// distribution implementations.
class Dice {
 public:
  explicit Dice(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct Pending {
  std::string label;
  std::size_t sender;
};

}  // namespace

std::string default_node_name(std::size_t index) {
  std::string name;
  ++index;
  while (index > 0) {
    --index;
    name.insert(name.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  }
  return name;
}

ExecutionTrace generate_trace(const GeneratorOptions& options) {
  if (options.node_count == 0) throw Error("node_count must be at least 1");
  Dice dice(options.seed);
  ExecutionTrace trace;
  for (std::size_t i = 0; i < options.node_count; ++i) trace.nodes.push_back(default_node_name(i));

  std::vector<Pending> pending;
  std::size_t next_label = 1;

  auto receivable_by = [&](std::size_t node) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i].sender != node) out.push_back(i);
    }
    return out;
  };

  for (std::size_t step = 0; step < options.step_count; ++step) {
    TraceStep s;
    s.relevant = dice.chance(options.relevant_probability);

    // Over the cap: deliver the oldest message at some other node.
    if (pending.size() >= options.max_undelivered && options.node_count > 1) {
      const auto& msg = pending.front();
      std::size_t receiver = dice.below(options.node_count - 1);
      if (receiver >= msg.sender) ++receiver;
      s.kind = StepKind::Receive;
      s.actor = trace.nodes[receiver];
      s.message = msg.label;
      pending.erase(pending.begin());
      trace.steps.push_back(std::move(s));
      continue;
    }

    const std::size_t actor = dice.below(options.node_count);
    s.actor = trace.nodes[actor];
    const auto inbox = receivable_by(actor);
    const double roll = dice.unit();
    if (roll < options.send_probability && options.node_count > 1) {
      s.kind = StepKind::Send;
      s.message = "m" + std::to_string(next_label++);
      pending.push_back({s.message, actor});
    } else if (!inbox.empty() && roll < 2 * options.send_probability) {
      const auto pick = inbox[dice.below(inbox.size())];
      s.kind = StepKind::Receive;
      s.message = pending[pick].label;
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    } else {
      s.kind = StepKind::Local;
    }
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

ExecutionTrace generate_trace(std::size_t node_count, std::size_t step_count,
                              double send_probability, double relevant_probability,
                              std::uint64_t seed) {
  GeneratorOptions o;
  o.node_count = node_count;
  o.step_count = step_count;
  o.send_probability = send_probability;
  o.relevant_probability = relevant_probability;
  o.seed = seed;
  return generate_trace(o);
}

ExecutionTrace generate_client_server_trace(const ClientServerOptions& options) {
  if (options.client_count == 0 || options.server_count == 0) {
    throw Error("client/server traces need at least one client and one server");
  }
  Dice dice(options.seed);
  ExecutionTrace trace;
  for (std::size_t i = 0; i < options.client_count; ++i) {
    trace.clients.push_back(default_node_name(i));
  }
  for (std::size_t i = 0; i < options.server_count; ++i) {
    auto name = default_node_name(i + 18);  // S, T, U, ...
    for (auto& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    trace.servers.push_back(std::move(name));
  }
  trace.nodes = trace.clients;
  trace.nodes.insert(trace.nodes.end(), trace.servers.begin(), trace.servers.end());

  const double sync_weight = options.server_count > 1 ? options.sync_weight : 0.0;
  const double total = options.get_weight + options.put_weight + sync_weight;
  std::vector<std::size_t> last_read(options.client_count, 0);

  for (std::size_t step = 0; step < options.step_count; ++step) {
    TraceStep s;
    const double roll = dice.unit() * total;
    if (roll < options.get_weight) {
      const auto c = dice.below(options.client_count);
      const auto srv = dice.below(options.server_count);
      last_read[c] = srv;
      s.kind = StepKind::Get;
      s.actor = trace.clients[c];
      s.peer = trace.servers[srv];
    } else if (roll < options.get_weight + options.put_weight) {
      const auto c = dice.below(options.client_count);
      // Mostly write back where the client last read.
      const auto srv = dice.chance(0.7) ? last_read[c] : dice.below(options.server_count);
      s.kind = StepKind::Put;
      s.actor = trace.clients[c];
      s.peer = trace.servers[srv];
    } else {
      const auto from = dice.below(options.server_count);
      auto to = dice.below(options.server_count - 1);
      if (to >= from) ++to;
      s.kind = StepKind::Sync;
      s.actor = trace.servers[from];
      s.peer = trace.servers[to];
    }
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

}  // namespace causality
