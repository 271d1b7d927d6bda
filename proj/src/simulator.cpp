#include "meshcast/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "meshcast/error.hpp"
#include "meshcast/random.hpp"

namespace meshcast {

SimMetrics simulate_multicast(const MeshNetwork& net, const MulticastTree& tree,
                              const ChannelAssignment& assignment, const SimConfig& config) {
  if (config.slots < 1) throw Error(ErrorCode::InvalidArgument, "slots must be at least 1");
  if (!(config.packets_per_slot > 0.0)) throw Error(ErrorCode::InvalidArgument, "packet rate must be positive");
  InterferenceParams ip = config.interference;
  if (!(ip.range > 0.0)) ip.range = net.comm_range();
  ip.validate();
  check_link_contract(tree, assignment);

  const auto senders = tree.forwarding_order();
  for (NodeId u : senders) {
    if (!assignment.si_of(u))
      throw Error(ErrorCode::ContractViolation, "forwarding node " + std::to_string(u) + " has no SI");
  }
  std::map<NodeId, std::vector<NodeId>> children;
  for (NodeId u : senders) children[u] = tree.children(u);

  // conflicts[i][j]: senders i and j cannot transmit in the same slot.
  const std::size_t k = senders.size();
  std::vector<std::vector<bool>> conflicts(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool c = links_conflict(senders[i], senders[j], assignment, net.positions(), ip);
      conflicts[i][j] = conflicts[j][i] = c;
    }
  }

  // Queues hold emission slots of packets awaiting forwarding.
  std::map<NodeId, std::deque<int>> queue;
  SimMetrics metrics;
  for (NodeId r : tree.receivers) metrics.delivered[r] = 0;
  double delay_sum = 0.0;
  long deliveries = 0;
  double credit = 0.0;
  Rng rng(config.seed);
  std::vector<std::size_t> order(k);

  for (int slot = 0; slot < config.slots; ++slot) {
    credit += config.packets_per_slot;
    const auto fresh = static_cast<long>(std::floor(credit + 1e-12));
    credit -= static_cast<double>(fresh);
    for (long p = 0; p < fresh; ++p) queue[tree.source].push_back(slot);
    metrics.injected += fresh;

    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    for (std::size_t i = k; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    std::vector<std::size_t> scheduled;
    for (std::size_t idx : order) {
      if (queue[senders[idx]].empty()) continue;
      const bool blocked = std::any_of(scheduled.begin(), scheduled.end(),
                                       [&](std::size_t s) { return conflicts[idx][s]; });
      if (blocked) {
        ++metrics.conflict_losses;
        continue;
      }
      scheduled.push_back(idx);
    }

    // Receptions are buffered so a packet advances at most one hop per slot.
    std::vector<std::pair<NodeId, int>> arrivals;
    for (std::size_t idx : scheduled) {
      auto& q = queue[senders[idx]];
      const int emitted = q.front();
      q.pop_front();
      for (NodeId c : children[senders[idx]]) arrivals.emplace_back(c, emitted);
    }
    for (const auto& [node, emitted] : arrivals) {
      const auto it = metrics.delivered.find(node);
      if (it != metrics.delivered.end()) {
        ++it->second;
        delay_sum += static_cast<double>(slot - emitted + 1);
        ++deliveries;
      }
      if (children.count(node) != 0) queue[node].push_back(emitted);
    }
  }

  if (metrics.delivered.empty()) {
    metrics.throughput = 0.0;
  } else {
    long worst = std::numeric_limits<long>::max();
    for (const auto& [r, count] : metrics.delivered) worst = std::min(worst, count);
    metrics.throughput = static_cast<double>(worst) / config.slots;
  }
  metrics.avg_delay = deliveries > 0 ? delay_sum / static_cast<double>(deliveries) : 0.0;
  return metrics;
}

}  // namespace meshcast
