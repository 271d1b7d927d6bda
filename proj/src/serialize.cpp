#include "meshcast/serialize.hpp"

#include <fstream>
#include <sstream>

#include "meshcast/error.hpp"

namespace meshcast {

namespace {

template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Json to_json(const MeshNetwork& net) {
  Json nodes = Json::array();
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    Json node{{"id", v}, {"x", net.positions()[v].x}, {"y", net.positions()[v].y}};
    if (!net.labels().empty()) node["label"] = net.labels()[v];
    nodes.push_back(std::move(node));
  }
  Json doc{{"nodes", nodes}, {"range", net.comm_range()}, {"source", net.source()}, {"receivers", net.receivers()}};
  if (net.has_explicit_edges()) {
    Json edges = Json::array();
    for (const auto& [u, v] : net.edges()) edges.push_back({u, v});
    doc["edges"] = edges;
  }
  return doc;
}

MeshNetwork network_from_json(const Json& doc) {
  const auto nodes = field<Json>(doc, "nodes");
  if (!nodes.is_array() || nodes.empty()) throw Error(ErrorCode::ParseError, "\"nodes\" must be a non-empty array");
  std::vector<Point> positions(nodes.size());
  std::vector<std::string> labels;
  std::vector<bool> seen(nodes.size(), false);
  bool any_label = false;
  for (const auto& node : nodes) any_label = any_label || node.contains("label");
  if (any_label) labels.resize(nodes.size());
  for (const auto& node : nodes) {
    const auto id = field<long long>(node, "id");
    if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || seen[static_cast<std::size_t>(id)])
      throw Error(ErrorCode::ParseError, "node ids must be a permutation of 0..n-1");
    const auto i = static_cast<std::size_t>(id);
    seen[i] = true;
    positions[i] = {field<double>(node, "x"), field<double>(node, "y")};
    if (any_label) labels[i] = node.contains("label") ? field<std::string>(node, "label") : std::to_string(id);
  }
  const auto range = field<double>(doc, "range");
  const auto source = field<NodeId>(doc, "source");
  auto receivers = field<std::vector<NodeId>>(doc, "receivers");
  if (doc.contains("edges")) {
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edges must be [u, v] pairs");
      edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    return MeshNetwork::with_edges(std::move(positions), range, source, std::move(receivers), edges, std::move(labels));
  }
  return MeshNetwork::unit_disk(std::move(positions), range, source, std::move(receivers), std::move(labels));
}

Json to_json(const MulticastTree& tree) {
  Json edges = Json::array();
  for (const auto& [child, parent] : tree.parent_of) edges.push_back({child, parent});
  const auto relays = tree.relays();
  return Json{{"source", tree.source},
              {"receivers", tree.receivers},
              {"nodes", std::vector<NodeId>(tree.nodes.begin(), tree.nodes.end())},
              {"edges", edges},
              {"relays", std::vector<NodeId>(relays.begin(), relays.end())}};
}

MulticastTree tree_from_json(const Json& doc) {
  MulticastTree tree;
  tree.source = field<NodeId>(doc, "source");
  tree.receivers = field<std::vector<NodeId>>(doc, "receivers");
  std::sort(tree.receivers.begin(), tree.receivers.end());
  const auto nodes = field<std::vector<NodeId>>(doc, "nodes");
  tree.nodes.insert(nodes.begin(), nodes.end());
  for (const auto& e : field<Json>(doc, "edges")) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "tree edges must be [child, parent] pairs");
    const auto child = e[0].get<NodeId>();
    if (!tree.parent_of.emplace(child, e[1].get<NodeId>()).second)
      throw Error(ErrorCode::ParseError, "node " + std::to_string(child) + " has two parents");
  }
  return tree;
}

Json to_json(const ChannelAssignment& assignment) {
  std::set<NodeId> nodes;
  for (const auto& kv : assignment.ri) nodes.insert(kv.first);
  for (const auto& kv : assignment.si) nodes.insert(kv.first);
  Json rows = Json::array();
  for (NodeId v : nodes) {
    const auto ri = assignment.ri_of(v);
    const auto si = assignment.si_of(v);
    rows.push_back(Json{{"node", v}, {"ri", ri ? Json(*ri) : Json(nullptr)}, {"si", si ? Json(*si) : Json(nullptr)}});
  }
  return Json{{"channels", assignment.channel_count}, {"interfaces", rows}};
}

ChannelAssignment assignment_from_json(const Json& doc) {
  ChannelAssignment out;
  out.channel_count = field<int>(doc, "channels");
  if (out.channel_count < 1) throw Error(ErrorCode::ParseError, "\"channels\" must be positive");
  for (const auto& row : field<Json>(doc, "interfaces")) {
    const auto v = field<NodeId>(row, "node");
    if (row.contains("ri") && !row.at("ri").is_null()) out.ri[v] = field<Channel>(row, "ri");
    if (row.contains("si") && !row.at("si").is_null()) out.si[v] = field<Channel>(row, "si");
  }
  return out;
}

std::string canonical(const Json& doc) { return doc.dump(2) + "\n"; }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_metrics_row(const MetricsRow& row) {
  std::ostringstream out;
  out.precision(10);
  out << row.scenario_id << ',' << row.algorithm << ',' << row.channels << ',' << row.delta << ',' << row.throughput
      << ',' << row.avg_delay << ',' << row.conflict_losses << ',' << row.relay_count;
  return out.str();
}

std::string format_metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = std::string(kMetricsHeader) + "\n";
  for (const auto& row : rows) out += format_metrics_row(row) + "\n";
  return out;
}

}  // namespace meshcast
