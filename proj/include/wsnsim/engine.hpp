// Round loop: election, clustering, redundancy idling, TDMA data phase,
// aggregation, uplink, death, metrics.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsnsim/energy.hpp"
#include "wsnsim/model.hpp"
#include "wsnsim/protocols.hpp"

namespace wsnsim {

struct RoundMetrics {
  int round = 0;  // 1-based
  std::size_t alive = 0;
  std::size_t dead = 0;
  std::size_t heads = 0;
  std::size_t idle = 0;
  std::size_t packets_member_to_ch = 0;
  std::size_t packets_ch_uplink = 0;
  std::size_t redundant_packets = 0;
  double avg_packets_per_head = 0.0;
  double energy_consumed_j = 0.0;
  double energy_remaining_j = 0.0;

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

struct SimState {
  NetworkConfig config;
  Thresholds thresholds;
  RandomSource rng;
  std::vector<Node> nodes;
  int round = 0;  // rounds completed so far
  bool sparse_reached = false;
};

/// Validates the config, deploys nodes, and assigns EELBCRP levels when needed.
SimState make_state(const NetworkConfig& config);

enum class DebitKind : std::uint8_t { MemberTx, HeadRx, Aggregation, UplinkTx, RelayRx };

struct Debit {
  NodeId node;
  DebitKind kind;
  double joules;  // energy actually removed from the node
  bool funded;    // false when the node died attempting the action
};

/// Optional per-round record of what happened, for inspection and tests.
struct RoundTrace {
  std::vector<NodeId> heads;
  std::vector<Cluster> clusters;
  Route route;
  std::vector<NodeId> transmitters;  // members whose packet left the radio
  std::vector<Debit> debits;
};

RoundMetrics run_round(SimState& state, RoundTrace* trace = nullptr);

/// Senders visited in ascending id; a packet is redundant iff its sender
/// lies within t_r of an earlier sender.
std::size_t count_redundant(std::span<const Node> nodes, std::span<const NodeId> transmitters,
                            double t_r);

/// Stops after the round in which the last node dies.
std::vector<RoundMetrics> run_simulation(const NetworkConfig& config);

/// Independent runs on up to `threads` workers (0 = hardware concurrency).
/// Results are returned in input order.
std::vector<std::vector<RoundMetrics>> run_batch(std::span<const NetworkConfig> configs,
                                                 unsigned threads = 0);

}  // namespace wsnsim
