#pragma once

#include <cstdint>
#include <map>

#include "meshcast/interference.hpp"
#include "meshcast/multicast.hpp"
#include "meshcast/topology.hpp"

namespace meshcast {

struct SimConfig {
  int slots = 200;
  double packets_per_slot = 1.0;
  std::uint64_t seed = 1;
  // range <= 0 means "use the network's communication range".
  InterferenceParams interference{0.0, 0.5};
};

struct SimMetrics {
  std::map<NodeId, long> delivered;
  long injected = 0;
  // Bottleneck rate: min over receivers of delivered / slots.
  double throughput = 0.0;
  // Mean slots from emission to delivery over every delivery; 0 when nothing
  // was delivered. A packet sent and received in the same slot counts 1.
  double avg_delay = 0.0;
  long conflict_losses = 0;

  bool operator==(const SimMetrics&) const = default;
};

// Slotted multicast over the tree. Each slot the source injects packets, then
// every forwarding node with a backlog attempts to send its head-of-line
// packet on its SI. Senders are scanned in a seeded random order and a sender
// defers if it conflicts with one already scheduled this slot. A successful
// send reaches all children at once; deferred packets stay queued.
// Throws ContractViolation if the assignment breaks the RI/SI link contract.
SimMetrics simulate_multicast(const MeshNetwork& net, const MulticastTree& tree,
                              const ChannelAssignment& assignment, const SimConfig& config);

}  // namespace meshcast
