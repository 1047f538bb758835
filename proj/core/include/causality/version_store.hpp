#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "causality/causal_history.hpp"
#include "causality/vector_clock.hpp"

namespace causality {

// ---------------------------------------------------------------------------
// Version vectors over relevant events (peer-to-peer replicas).
// ---------------------------------------------------------------------------

struct VersionedRecord {
  CausalHistory history;
  std::string payload;

  bool operator==(const VersionedRecord&) const = default;
};

/// A peer replica. In merge-on-receive mode it holds at most one record;
/// in sibling mode it holds an antichain of records.
class VersionReplica {
 public:
  VersionReplica() = default;
  explicit VersionReplica(std::string node);
  VersionReplica(std::string node, std::uint64_t counter, std::vector<VersionedRecord> siblings);

  const std::string& node() const noexcept { return node_; }
  /// Number of names this replica has minted.
  std::uint64_t counter() const noexcept { return counter_; }
  const std::vector<VersionedRecord>& siblings() const noexcept { return siblings_; }

  /// Union of all sibling histories (no dot).
  CausalHistory node_history() const;
  /// Next unique name minted here.
  EventId next_name() const { return {node_, counter_ + 1}; }

  bool operator==(const VersionReplica&) const = default;

 private:
  std::string node_;
  std::uint64_t counter_ = 0;
  std::vector<VersionedRecord> siblings_;
};

/// Single-version update. Relevant steps mint a name; others leave the
/// replica untouched. Throws in sibling mode (more than one record).
VersionReplica vv_update(const VersionReplica& replica, bool relevant);

/// Merge-on-receive. Concurrent histories are joined under a fresh name;
/// a dominating incoming history is adopted as is; otherwise unchanged.
VersionReplica vv_receive_merge(const VersionReplica& local, const CausalHistory& incoming);

/// Sibling mode: union of the record sets with dominated records dropped.
VersionReplica sibling_receive(const VersionReplica& local,
                               std::span<const VersionedRecord> incoming);

/// Sibling mode: collapses all siblings into one record under a fresh name.
/// No-op on an empty replica.
VersionReplica sibling_merge_event(const VersionReplica& replica);

/// Sibling mode relevant local step: the first version on an empty replica,
/// otherwise a merge event.
VersionReplica sibling_update(const VersionReplica& replica);

// ---------------------------------------------------------------------------
// Dotted version vectors (client/server stores).
// ---------------------------------------------------------------------------

struct DottedRecord {
  DottedClock clock;
  std::string payload;

  bool operator==(const DottedRecord&) const = default;
};

struct ClientContext {
  VectorClock context;
  bool operator==(const ClientContext&) const = default;
};

/// A server replica. Siblings keep insertion order.
class DvvServer {
 public:
  DvvServer(std::string node, UniversePtr servers);
  DvvServer(std::string node, UniversePtr servers, std::uint64_t counter,
            std::vector<DottedRecord> siblings);

  const std::string& node() const noexcept { return node_; }
  const UniversePtr& universe() const noexcept { return universe_; }
  std::uint64_t counter() const noexcept { return counter_; }
  const std::vector<DottedRecord>& siblings() const noexcept { return siblings_; }

  /// Point-wise max of every sibling's raised history vector.
  VectorClock join() const;
  /// Union of all sibling histories as an explicit set.
  CausalHistory node_history() const;

  bool operator==(const DvvServer&) const = default;

 private:
  std::string node_;
  UniversePtr universe_;
  std::uint64_t counter_ = 0;
  std::vector<DottedRecord> siblings_;
};

struct GetResult {
  std::vector<DottedRecord> records;
  ClientContext context;
};

ClientContext empty_context(UniversePtr servers);
GetResult dvv_get(const DvvServer& server);
/// Mints the next server dot, drops every sibling whose dot the context
/// covers and appends the new record.
DvvServer dvv_put(const DvvServer& server, const ClientContext& ctx, std::string payload);
/// Destination receives the source's siblings; the union is reduced to its
/// maximal elements.
DvvServer dvv_sync(const DvvServer& source, const DvvServer& dest);

/// Pairwise-concurrent check for sibling sets.
bool is_antichain(std::span<const VersionedRecord> records);
bool is_antichain(std::span<const DottedRecord> records);

/// True iff the server's own names 1..counter all appear in its node
/// history.
bool own_names_gap_free(const DvvServer& server);

/// `[0,2]t3,[0,0]s1`
std::string to_string(const DvvServer& server);

}  // namespace causality
