#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "meshcast/multicast.hpp"
#include "meshcast/simulator.hpp"
#include "meshcast/topology.hpp"

namespace meshcast {

using Json = nlohmann::json;

// Network document: {nodes: [{id, x, y[, label]}], range, source, receivers
// [, edges: [[u, v], ...]]}. Explicit edges, when present, replace the
// unit-disk rule.
Json to_json(const MeshNetwork& net);
MeshNetwork network_from_json(const Json& doc);

// Tree document: {source, receivers, nodes, edges: [[child, parent], ...], relays}.
Json to_json(const MulticastTree& tree);
MulticastTree tree_from_json(const Json& doc);

// Assignment document: {channels, interfaces: [{node, ri, si}, ...]} with
// null for a missing interface.
Json to_json(const ChannelAssignment& assignment);
ChannelAssignment assignment_from_json(const Json& doc);

// Canonical text: two-space indent, sorted keys, trailing newline.
std::string canonical(const Json& doc);

Json read_json_file(const std::filesystem::path& path);
// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct MetricsRow {
  std::string scenario_id;
  std::string algorithm;
  int channels = 1;
  double delta = 0.5;
  double throughput = 0.0;
  double avg_delay = 0.0;
  long conflict_losses = 0;
  std::size_t relay_count = 0;
};

inline constexpr const char* kMetricsHeader =
    "scenario_id,algorithm,C,delta,throughput,avg_delay,conflict_losses,relay_count";

std::string format_metrics_row(const MetricsRow& row);
std::string format_metrics_csv(const std::vector<MetricsRow>& rows);

}  // namespace meshcast
