#include "meshcast/mcm.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "meshcast/error.hpp"

namespace meshcast {

std::set<NodeId> min_relay_cover(const CoverInstance& instance) {
  std::set<NodeId> uncovered = instance.targets;
  for (NodeId t : instance.targets) {
    const bool reachable = std::any_of(instance.candidates.begin(), instance.candidates.end(),
                                       [t](const auto& kv) { return kv.second.count(t) != 0; });
    if (!reachable) throw Error(ErrorCode::Uncoverable, "target " + std::to_string(t) + " has no covering candidate");
  }

  std::vector<NodeId> picked;
  while (!uncovered.empty()) {
    NodeId best = -1;
    std::size_t best_gain = 0;
    // std::map iterates in ascending id, so strict > keeps the smallest id on ties.
    for (const auto& [candidate, coverage] : instance.candidates) {
      const auto gain = static_cast<std::size_t>(
          std::count_if(coverage.begin(), coverage.end(), [&](NodeId t) { return uncovered.count(t) != 0; }));
      if (gain > best_gain) {
        best_gain = gain;
        best = candidate;
      }
    }
    picked.push_back(best);
    for (NodeId t : instance.candidates.at(best)) uncovered.erase(t);
  }

  // Drop picks made redundant by later ones, latest first.
  std::set<NodeId> chosen(picked.begin(), picked.end());
  for (auto it = picked.rbegin(); it != picked.rend(); ++it) {
    chosen.erase(*it);
    const bool still_covers = std::all_of(instance.targets.begin(), instance.targets.end(), [&](NodeId t) {
      return std::any_of(chosen.begin(), chosen.end(), [&](NodeId c) { return instance.candidates.at(c).count(t) != 0; });
    });
    if (!still_covers) chosen.insert(*it);
  }
  return chosen;
}

CoverInstance relay_cover_instance(const TreeMesh& mesh, int level, const std::set<NodeId>& targets_below) {
  CoverInstance inst;
  inst.targets = targets_below;
  for (NodeId t : targets_below) {
    if (mesh.levels.level_of(t) != level + 1)
      throw Error(ErrorCode::InvalidArgument, "cover target " + std::to_string(t) + " is not one level below");
    for (NodeId p : mesh.parents(t)) inst.candidates[p].insert(t);
  }
  return inst;
}

MulticastTree mcm_build_tree(const TreeMesh& mesh, std::span<const NodeId> receivers) {
  const auto& levels = mesh.levels;
  MulticastTree tree;
  tree.source = levels.source;
  tree.receivers.assign(receivers.begin(), receivers.end());
  std::sort(tree.receivers.begin(), tree.receivers.end());
  tree.receivers.erase(std::unique(tree.receivers.begin(), tree.receivers.end()), tree.receivers.end());
  tree.nodes.insert(tree.source);

  int deepest = 0;
  std::map<int, std::set<NodeId>> receivers_at;
  for (NodeId r : tree.receivers) {
    if (r < 0 || static_cast<std::size_t>(r) >= mesh.node_count())
      throw Error(ErrorCode::InvalidArgument, "receiver id out of range: " + std::to_string(r));
    if (!levels.reachable(r))
      throw Error(ErrorCode::UnreachableReceiver, "receiver " + std::to_string(r) + " is not reachable");
    receivers_at[levels.level_of(r)].insert(r);
    deepest = std::max(deepest, levels.level_of(r));
    tree.nodes.insert(r);
  }

  std::set<NodeId> targets = receivers_at[deepest];
  for (int lvl = deepest - 1; lvl >= 0; --lvl) {
    const CoverInstance inst = relay_cover_instance(mesh, lvl, targets);
    const std::set<NodeId> cover = min_relay_cover(inst);
    for (NodeId t : targets) {
      for (NodeId c : cover) {
        if (inst.candidates.at(c).count(t) != 0) {
          tree.parent_of[t] = c;
          break;
        }
      }
    }
    tree.nodes.insert(cover.begin(), cover.end());
    targets = cover;
    const auto& here = receivers_at[lvl];
    targets.insert(here.begin(), here.end());
  }
  return tree;
}

ChannelAssignment ascending_assignment(const MulticastTree& tree, int channel_count) {
  if (channel_count < 1) throw Error(ErrorCode::InvalidArgument, "channel count must be at least 1");
  ChannelAssignment out;
  out.channel_count = channel_count;
  for (NodeId u : tree.top_down_order()) {
    if (u == tree.source) {
      out.si[u] = 0;
      continue;
    }
    const Channel ri = out.si.at(*tree.parent(u));
    out.ri[u] = ri;
    if (tree.forwards(u)) out.si[u] = (ri + 1) % channel_count;
  }
  return out;
}

std::vector<NodeId> relay_neighbors(NodeId u, std::span<const NodeId> assigned, const MeshNetwork& net,
                                    double radius) {
  std::vector<NodeId> out;
  for (NodeId v : assigned) {
    if (v != u && distance(net.position(u), net.position(v)) <= radius) out.push_back(v);
  }
  return out;
}

ChannelAssignment heuristic_assignment(const MulticastTree& tree, const MeshNetwork& net,
                                       const HeuristicParams& params) {
  if (params.channel_count < 1) throw Error(ErrorCode::InvalidArgument, "channel count must be at least 1");
  const InterferenceParams ip{net.comm_range(), params.delta};
  ip.validate();
  const double radius = params.neighbor_radius > 0.0 ? params.neighbor_radius : 2.0 * net.comm_range();

  ChannelAssignment out;
  out.channel_count = params.channel_count;
  std::vector<NodeId> assigned;
  auto fallback = [&](NodeId u) {
    const auto ri = out.ri_of(u);
    return ri ? (*ri + 1) % params.channel_count : 0;
  };

  for (NodeId u : tree.top_down_order()) {
    if (u != tree.source) out.ri[u] = out.si.at(*tree.parent(u));
    if (!tree.forwards(u) && u != tree.source) continue;

    const auto neighbors = relay_neighbors(u, assigned, net, radius);
    if (neighbors.empty()) {
      out.si[u] = fallback(u);
    } else {
      Channel best = 0;
      double best_cost = std::numeric_limits<double>::infinity();
      for (Channel c = 0; c < params.channel_count; ++c) {
        out.si[u] = c;
        const double cost = pairwise_objective(u, out, neighbors, ip);
        if (cost < best_cost) {
          best_cost = cost;
          best = c;
        }
      }
      out.si[u] = best;
    }
    assigned.push_back(u);
  }
  return out;
}

double total_interference(const MulticastTree& tree, const ChannelAssignment& assignment,
                          const MeshNetwork& net, const InterferenceParams& params, double radius) {
  const auto senders = tree.forwarding_order();
  double total = 0.0;
  for (std::size_t i = 0; i < senders.size(); ++i) {
    for (std::size_t j = i + 1; j < senders.size(); ++j) {
      if (distance(net.position(senders[i]), net.position(senders[j])) > radius) continue;
      const NodeId pair[] = {senders[j]};
      total += pairwise_objective(senders[i], assignment, pair, params);
    }
  }
  return total;
}

}  // namespace meshcast
