#include "causality/trace.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "causality/error.hpp"

namespace causality {
namespace {

bool valid_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

std::optional<StepKind> kind_of(char c) {
  switch (c) {
    case 'L': return StepKind::Local;
    case 'S': return StepKind::Send;
    case 'R': return StepKind::Receive;
    case 'G': return StepKind::Get;
    case 'P': return StepKind::Put;
    case 'Y': return StepKind::Sync;
    default: return std::nullopt;
  }
}

class TraceParser {
 public:
  ExecutionTrace run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(pos, end - pos);
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto words = split_words(line);
      if (!words.empty()) directive(line_no, words);
      pos = end + 1;
    }
    if (!have_nodes_) throw ParseError(line_no, "missing 'nodes' declaration");
    check_roles(line_no);
    return std::move(trace_);
  }

 private:
  void directive(std::size_t line, const std::vector<std::string_view>& words) {
    const auto head = words.front();
    if (head == "nodes") {
      if (have_nodes_) throw ParseError(line, "duplicate 'nodes' declaration");
      if (words.size() < 2) throw ParseError(line, "'nodes' needs at least one name");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!valid_token(words[i])) {
          throw ParseError(line, "invalid node name '" + std::string(words[i]) + "'");
        }
        if (!declared_.insert(std::string(words[i])).second) {
          throw ParseError(line, "duplicate node '" + std::string(words[i]) + "'");
        }
        trace_.nodes.emplace_back(words[i]);
      }
      have_nodes_ = true;
      return;
    }
    if (!have_nodes_) throw ParseError(line, "first directive must be 'nodes'");
    if (head == "clients" || head == "servers") {
      role_declaration(line, head == "clients" ? trace_.clients : trace_.servers, words);
      return;
    }
    event_line(line, words);
  }

  void role_declaration(std::size_t line, std::vector<std::string>& target,
                        const std::vector<std::string_view>& words) {
    if (!trace_.steps.empty()) {
      throw ParseError(line, "role declarations must precede event lines");
    }
    if (!target.empty()) {
      throw ParseError(line, "duplicate '" + std::string(words.front()) + "' declaration");
    }
    if (words.size() < 2) {
      throw ParseError(line, "'" + std::string(words.front()) + "' needs at least one name");
    }
    for (std::size_t i = 1; i < words.size(); ++i) {
      std::string name(words[i]);
      if (!declared_.contains(name)) throw ParseError(line, "undeclared node '" + name + "'");
      if (role_.contains(name)) throw ParseError(line, "node '" + name + "' has two roles");
      role_[name] = words.front() == "clients" ? Role::Client : Role::Server;
      target.push_back(std::move(name));
    }
    roles_line_ = line;
  }

  void check_roles(std::size_t line) const {
    if (trace_.clients.empty() != trace_.servers.empty()) {
      throw ParseError(roles_line_ ? roles_line_ : line,
                       "'clients' and 'servers' must be declared together");
    }
    if (!trace_.servers.empty() && role_.size() != trace_.nodes.size()) {
      for (const auto& n : trace_.nodes) {
        if (!role_.contains(n)) {
          throw ParseError(roles_line_, "node '" + n + "' has no role");
        }
      }
    }
  }

  const std::string& node(std::size_t line, std::string_view name) {
    auto it = declared_.find(std::string(name));
    if (it == declared_.end()) throw ParseError(line, "undeclared node '" + std::string(name) + "'");
    return *it;
  }

  void event_line(std::size_t line, const std::vector<std::string_view>& words) {
    auto op = words.front();
    bool relevant = false;
    if (op.size() == 2 && op[1] == '!') {
      relevant = true;
      op = op.substr(0, 1);
    }
    auto kind = op.size() == 1 ? kind_of(op[0]) : std::nullopt;
    if (!kind) throw ParseError(line, "unknown directive '" + std::string(words.front()) + "'");
    if (trace_.clients.empty() != trace_.servers.empty()) {
      throw ParseError(line, "'clients' and 'servers' must be declared together");
    }

    const bool needs_arg = *kind != StepKind::Local;
    const std::size_t expected = needs_arg ? 3 : 2;
    if (words.size() != expected) {
      throw ParseError(line, std::string("'") + step_code(*kind) + "' takes " +
                                 (needs_arg ? "an actor and an argument" : "an actor only"));
    }

    TraceStep step;
    step.kind = *kind;
    step.actor = node(line, words[1]);
    step.relevant = relevant;
    step.line = line;

    const bool cs = trace_.client_server();
    switch (*kind) {
      case StepKind::Local:
      case StepKind::Send:
      case StepKind::Receive:
        if (cs) throw ParseError(line, "local/message steps are not allowed in a client/server trace");
        break;
      case StepKind::Get:
      case StepKind::Put:
      case StepKind::Sync:
        if (!cs) throw ParseError(line, "client/server step without roles declaration");
        break;
    }

    switch (*kind) {
      case StepKind::Local:
        break;
      case StepKind::Send: {
        if (!valid_token(words[2])) throw ParseError(line, "invalid message label");
        std::string label(words[2]);
        if (!senders_.emplace(label, step.actor).second) {
          throw ParseError(line, "duplicate message label '" + label + "'");
        }
        step.message = std::move(label);
        break;
      }
      case StepKind::Receive: {
        std::string label(words[2]);
        auto it = senders_.find(label);
        if (it == senders_.end()) {
          throw ParseError(line, "receive of '" + label + "' before its send");
        }
        if (it->second == step.actor) {
          throw ParseError(line, "node '" + step.actor + "' receives its own message '" + label + "'");
        }
        step.message = std::move(label);
        break;
      }
      case StepKind::Get:
      case StepKind::Put:
        step.peer = node(line, words[2]);
        if (role_.at(step.actor) != Role::Client) {
          throw ParseError(line, "'" + step.actor + "' is not a client");
        }
        if (role_.at(step.peer) != Role::Server) {
          throw ParseError(line, "'" + step.peer + "' is not a server");
        }
        break;
      case StepKind::Sync:
        step.peer = node(line, words[2]);
        if (role_.at(step.actor) != Role::Server || role_.at(step.peer) != Role::Server) {
          throw ParseError(line, "sync needs two servers");
        }
        if (step.actor == step.peer) throw ParseError(line, "sync of a server with itself");
        break;
    }
    trace_.steps.push_back(std::move(step));
  }

  enum class Role { Client, Server };

  ExecutionTrace trace_;
  bool have_nodes_ = false;
  std::size_t roles_line_ = 0;
  std::set<std::string> declared_;
  std::map<std::string, Role> role_;
  std::map<std::string, std::string> senders_;
};

}  // namespace

char step_code(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::Local: return 'L';
    case StepKind::Send: return 'S';
    case StepKind::Receive: return 'R';
    case StepKind::Get: return 'G';
    case StepKind::Put: return 'P';
    case StepKind::Sync: return 'Y';
  }
  return '?';
}

UniversePtr ExecutionTrace::universe() const { return make_universe(nodes); }

UniversePtr ExecutionTrace::server_universe() const {
  std::vector<std::string> ordered;
  for (const auto& n : nodes) {
    if (std::find(servers.begin(), servers.end(), n) != servers.end()) ordered.push_back(n);
  }
  return make_universe(std::move(ordered));
}

ExecutionTrace parse_trace(std::string_view text) { return TraceParser{}.run(text); }

std::string serialize_trace(const ExecutionTrace& trace) {
  std::ostringstream out;
  auto list = [&](std::string_view head, const std::vector<std::string>& names) {
    out << head;
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
  };
  list("nodes", trace.nodes);
  if (trace.client_server()) {
    list("clients", trace.clients);
    list("servers", trace.servers);
  }
  for (const auto& s : trace.steps) {
    out << step_code(s.kind);
    if (s.relevant) out << '!';
    out << ' ' << s.actor;
    switch (s.kind) {
      case StepKind::Local: break;
      case StepKind::Send:
      case StepKind::Receive: out << ' ' << s.message; break;
      default: out << ' ' << s.peer; break;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::optional<EventId>> step_events(const ExecutionTrace& trace) {
  std::vector<std::optional<EventId>> ids;
  ids.reserve(trace.steps.size());
  std::map<std::string, std::uint64_t> counters;
  for (const auto& s : trace.steps) {
    if (!trace.client_server()) {
      ids.push_back(EventId{s.actor, ++counters[s.actor]});
    } else if (s.kind == StepKind::Put) {
      ids.push_back(EventId{s.peer, ++counters[s.peer]});
    } else {
      ids.push_back(std::nullopt);
    }
  }
  return ids;
}

}  // namespace causality
