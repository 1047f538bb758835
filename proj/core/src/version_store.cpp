#include "causality/version_store.hpp"

#include <algorithm>

#include "causality/error.hpp"

namespace causality {

VersionReplica::VersionReplica(std::string node) : node_(std::move(node)) {}

VersionReplica::VersionReplica(std::string node, std::uint64_t counter,
                               std::vector<VersionedRecord> siblings)
    : node_(std::move(node)), counter_(counter), siblings_(std::move(siblings)) {}

CausalHistory VersionReplica::node_history() const {
  CausalHistory h;
  for (const auto& r : siblings_) h = ch_merge(h, r.history);
  return h;
}

namespace {

CausalHistory single_history(const VersionReplica& r) {
  if (r.siblings().size() > 1) {
    throw Error("replica '" + r.node() + "' holds siblings; not in single-version mode");
  }
  return r.siblings().empty() ? CausalHistory{} : r.siblings().front().history;
}

VersionReplica with_new_name(const VersionReplica& r, const CausalHistory& base) {
  const auto name = r.next_name();
  VersionedRecord rec{ch_new_event(base, name), name.str()};
  return VersionReplica(r.node(), r.counter() + 1, {std::move(rec)});
}

// Maximal elements of `records`, keeping the first of any equal group and
// the original order otherwise.
std::vector<VersionedRecord> maximal(const std::vector<VersionedRecord>& records) {
  std::vector<VersionedRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < records.size() && keep; ++j) {
      if (i == j) continue;
      const auto rel = ch_relation(records[i].history, records[j].history);
      if (rel == Order::Before || (rel == Order::Equal && j < i)) keep = false;
    }
    if (keep) out.push_back(records[i]);
  }
  return out;
}

}  // namespace

VersionReplica vv_update(const VersionReplica& replica, bool relevant) {
  const auto current = single_history(replica);
  if (!relevant) return replica;
  return with_new_name(replica, current);
}

VersionReplica vv_receive_merge(const VersionReplica& local, const CausalHistory& incoming) {
  const auto current = single_history(local);
  switch (ch_relation(current, incoming)) {
    case Order::Before: {
      VersionedRecord adopted{incoming, incoming.dot() ? incoming.dot()->str() : std::string{}};
      return VersionReplica(local.node(), local.counter(), {std::move(adopted)});
    }
    case Order::Concurrent:
      return with_new_name(local, ch_merge(current, incoming));
    default:
      return local;
  }
}

VersionReplica sibling_receive(const VersionReplica& local,
                               std::span<const VersionedRecord> incoming) {
  std::vector<VersionedRecord> all = local.siblings();
  all.insert(all.end(), incoming.begin(), incoming.end());
  return VersionReplica(local.node(), local.counter(), maximal(all));
}

VersionReplica sibling_merge_event(const VersionReplica& replica) {
  if (replica.siblings().empty()) return replica;
  return with_new_name(replica, replica.node_history());
}

VersionReplica sibling_update(const VersionReplica& replica) {
  if (replica.siblings().empty()) return with_new_name(replica, CausalHistory{});
  return sibling_merge_event(replica);
}

bool is_antichain(std::span<const VersionedRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (ch_relation(records[i].history, records[j].history) != Order::Concurrent) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

DvvServer::DvvServer(std::string node, UniversePtr servers)
    : node_(std::move(node)), universe_(std::move(servers)) {
  universe_->index_of(node_);
}

DvvServer::DvvServer(std::string node, UniversePtr servers, std::uint64_t counter,
                     std::vector<DottedRecord> siblings)
    : node_(std::move(node)),
      universe_(std::move(servers)),
      counter_(counter),
      siblings_(std::move(siblings)) {
  universe_->index_of(node_);
}

VectorClock DvvServer::join() const {
  VectorClock out(universe_);
  for (const auto& r : siblings_) out = vc_merge(out, r.clock.raised());
  return out;
}

CausalHistory DvvServer::node_history() const {
  CausalHistory h;
  for (const auto& r : siblings_) h = ch_merge(h, dvc_expand(r.clock));
  return h;
}

ClientContext empty_context(UniversePtr servers) { return {VectorClock(std::move(servers))}; }

GetResult dvv_get(const DvvServer& server) { return {server.siblings(), {server.join()}}; }

DvvServer dvv_put(const DvvServer& server, const ClientContext& ctx, std::string payload) {
  if (!same_universe(ctx.context.universe(), server.universe())) {
    throw Error("client context and server use different universes");
  }
  EventId dot{server.node(), server.counter() + 1};
  std::vector<DottedRecord> kept;
  for (const auto& r : server.siblings()) {
    const auto& d = r.clock.dot();
    if (d.counter > ctx.context.at(d.node)) kept.push_back(r);
  }
  kept.push_back({DottedClock(ctx.context, std::move(dot)), std::move(payload)});
  return DvvServer(server.node(), server.universe(), server.counter() + 1, std::move(kept));
}

DvvServer dvv_sync(const DvvServer& source, const DvvServer& dest) {
  if (!same_universe(source.universe(), dest.universe())) {
    throw Error("servers use different universes");
  }
  std::vector<DottedRecord> all = dest.siblings();
  for (const auto& r : source.siblings()) {
    const bool present = std::any_of(all.begin(), all.end(), [&](const DottedRecord& x) {
      return x.clock.dot() == r.clock.dot();
    });
    if (!present) all.push_back(r);
  }
  std::vector<DottedRecord> kept;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      dominated = i != j && all[j].clock.covers(all[i].clock.dot());
    }
    if (!dominated) kept.push_back(all[i]);
  }
  return DvvServer(dest.node(), dest.universe(), dest.counter(), std::move(kept));
}

bool is_antichain(std::span<const DottedRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (dvc_relation(records[i].clock, records[j].clock) != Order::Concurrent) return false;
    }
  }
  return true;
}

bool own_names_gap_free(const DvvServer& server) {
  const auto history = server.node_history();
  for (std::uint64_t k = 1; k <= server.counter(); ++k) {
    if (!history.contains(EventId{server.node(), k})) return false;
  }
  return true;
}

std::string to_string(const DvvServer& server) {
  std::string out;
  for (const auto& r : server.siblings()) {
    if (!out.empty()) out += ',';
    out += to_string(r.clock);
  }
  return out;
}

}  // namespace causality
