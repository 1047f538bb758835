#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "causality/trace.hpp"

namespace causality {

struct GeneratorOptions {
  std::size_t node_count = 3;
  std::size_t step_count = 20;
  double send_probability = 0.3;
  double relevant_probability = 1.0;
  std::uint64_t seed = 0;
  /// Upper bound on sent-but-undelivered messages; once reached, steps are
  /// forced to be receives where possible.
  std::size_t max_undelivered = 8;
};

/// Random plain trace. Deterministic for a fixed option set.
ExecutionTrace generate_trace(const GeneratorOptions& options);

ExecutionTrace generate_trace(std::size_t node_count, std::size_t step_count,
                              double send_probability, double relevant_probability,
                              std::uint64_t seed);

struct ClientServerOptions {
  std::size_t client_count = 2;
  std::size_t server_count = 2;
  std::size_t step_count = 20;
  std::uint64_t seed = 0;
  double get_weight = 0.35;
  double put_weight = 0.45;
  double sync_weight = 0.20;
};

/// Random client/server trace made of Get, Put and Sync steps.
ExecutionTrace generate_client_server_trace(const ClientServerOptions& options);

/// `a`..`z`, then `aa`, `ab`, ...
std::string default_node_name(std::size_t index);

}  // namespace causality
