#include "meshcast/lca.hpp"

#include <algorithm>
#include <vector>

#include "meshcast/error.hpp"
#include "meshcast/random.hpp"

namespace meshcast {

MulticastTree lca_build_tree(const TreeMesh& mesh, std::span<const NodeId> receivers, std::uint64_t seed) {
  const auto& levels = mesh.levels;
  MulticastTree tree;
  tree.source = levels.source;
  tree.receivers.assign(receivers.begin(), receivers.end());
  std::sort(tree.receivers.begin(), tree.receivers.end());
  tree.receivers.erase(std::unique(tree.receivers.begin(), tree.receivers.end()), tree.receivers.end());

  tree.nodes.insert(tree.source);
  for (NodeId r : tree.receivers) {
    if (r < 0 || static_cast<std::size_t>(r) >= mesh.node_count())
      throw Error(ErrorCode::InvalidArgument, "receiver id out of range: " + std::to_string(r));
    if (!levels.reachable(r))
      throw Error(ErrorCode::UnreachableReceiver, "receiver " + std::to_string(r) + " is not reachable");
    tree.nodes.insert(r);
  }

  Rng rng(seed);
  for (NodeId r : tree.receivers) {
    NodeId v = r;
    while (v != tree.source && tree.parent_of.count(v) == 0) {
      const auto parents = mesh.parents(v);
      const auto attached = std::find_if(parents.begin(), parents.end(),
                                         [&](NodeId p) { return tree.contains(p); });
      if (attached != parents.end()) {
        tree.parent_of[v] = *attached;
        break;
      }
      const NodeId relay = parents[rng.index(parents.size())];
      tree.parent_of[v] = relay;
      tree.nodes.insert(relay);
      v = relay;
    }
  }
  return tree;
}

ChannelAssignment lca_assign_channels(const MulticastTree& tree, const LevelDecomposition& levels,
                                      int channel_count) {
  if (channel_count < 1) throw Error(ErrorCode::InvalidArgument, "channel count must be at least 1");
  ChannelAssignment out;
  out.channel_count = channel_count;
  for (NodeId v : tree.nodes) {
    const int lv = levels.level_of(v);
    out.si[v] = lv % channel_count;
    if (v != tree.source) out.ri[v] = (lv - 1) % channel_count;
  }
  return out;
}

}  // namespace meshcast
