#include "meshcast/multicast.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "meshcast/error.hpp"

namespace meshcast {

std::optional<NodeId> MulticastTree::parent(NodeId v) const {
  const auto it = parent_of.find(v);
  if (it == parent_of.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> MulticastTree::children(NodeId v) const {
  std::vector<NodeId> out;
  for (const auto& [child, par] : parent_of) {
    if (par == v) out.push_back(child);
  }
  return out;
}

bool MulticastTree::forwards(NodeId v) const {
  return std::any_of(parent_of.begin(), parent_of.end(), [v](const auto& kv) { return kv.second == v; });
}

std::set<NodeId> MulticastTree::relays() const {
  std::set<NodeId> out;
  for (const auto& [child, par] : parent_of) {
    if (par != source) out.insert(par);
  }
  return out;
}

int MulticastTree::depth(NodeId v) const {
  int d = 0;
  NodeId cur = v;
  while (cur != source) {
    const auto it = parent_of.find(cur);
    if (it == parent_of.end() || d > static_cast<int>(nodes.size()))
      throw Error(ErrorCode::ValidationError, "node " + std::to_string(v) + " does not reach the source");
    cur = it->second;
    ++d;
  }
  return d;
}

std::vector<NodeId> MulticastTree::top_down_order() const {
  std::map<NodeId, std::vector<NodeId>> kids;
  for (const auto& [child, par] : parent_of) kids[par].push_back(child);
  std::vector<std::pair<int, NodeId>> keyed;
  std::deque<std::pair<NodeId, int>> queue{{source, 0}};
  while (!queue.empty()) {
    const auto [u, d] = queue.front();
    queue.pop_front();
    keyed.emplace_back(d, u);
    for (NodeId c : kids[u]) queue.emplace_back(c, d + 1);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<NodeId> out;
  out.reserve(keyed.size());
  for (const auto& kv : keyed) out.push_back(kv.second);
  return out;
}

std::vector<NodeId> MulticastTree::forwarding_order() const {
  std::vector<NodeId> out;
  for (NodeId v : top_down_order()) {
    if (forwards(v)) out.push_back(v);
  }
  return out;
}

std::vector<Edge> MulticastTree::edges() const {
  std::vector<Edge> out(parent_of.begin(), parent_of.end());
  return out;
}

void validate_tree(const MulticastTree& tree, const LevelDecomposition& levels) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ValidationError, what); };
  if (!tree.contains(tree.source)) fail("source missing from tree");
  if (tree.parent_of.count(tree.source) != 0) fail("source has a parent");
  for (NodeId r : tree.receivers) {
    if (!tree.contains(r)) fail("receiver " + std::to_string(r) + " missing from tree");
  }
  for (NodeId v : tree.nodes) {
    if (v == tree.source) continue;
    const auto p = tree.parent(v);
    if (!p) fail("tree node " + std::to_string(v) + " has no parent");
    if (!tree.contains(*p)) fail("parent of " + std::to_string(v) + " is not a tree node");
    if (levels.level_of(*p) != levels.level_of(v) - 1)
      fail("parent of " + std::to_string(v) + " is not one level up");
    (void)tree.depth(v);
  }
  for (const auto& [child, par] : tree.parent_of) {
    if (!tree.contains(child)) fail("parent_of names non-tree node " + std::to_string(child));
  }
}

std::optional<Channel> ChannelAssignment::ri_of(NodeId v) const {
  const auto it = ri.find(v);
  if (it == ri.end()) return std::nullopt;
  return it->second;
}

std::optional<Channel> ChannelAssignment::si_of(NodeId v) const {
  const auto it = si.find(v);
  if (it == si.end()) return std::nullopt;
  return it->second;
}

void check_link_contract(const MulticastTree& tree, const ChannelAssignment& assignment) {
  auto in_range = [&](Channel c) { return c >= 0 && c < assignment.channel_count; };
  for (const auto& table : {&assignment.ri, &assignment.si}) {
    for (const auto& [v, c] : *table) {
      if (!in_range(c))
        throw Error(ErrorCode::ContractViolation,
                    "channel " + std::to_string(c) + " of node " + std::to_string(v) + " out of range");
    }
  }
  for (const auto& [child, par] : tree.parent_of) {
    const auto ri = assignment.ri_of(child);
    const auto si = assignment.si_of(par);
    if (!ri || !si || *ri != *si)
      throw Error(ErrorCode::ContractViolation,
                  "link " + std::to_string(par) + "->" + std::to_string(child) + " has mismatched RI/SI");
  }
}

}  // namespace meshcast
