#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "meshcast/serialize.hpp"
#include "meshcast/shortest_path.hpp"
#include "meshcast/simulator.hpp"
#include "meshcast/topology.hpp"

namespace meshcast {

enum class TreeAlgorithm { Lca, Mcm };
enum class AssignAlgorithm { Lca, Ascending, Heuristic };
enum class Solver { Dijkstra, Pcnn, Dspcnn };

std::string_view to_string(TreeAlgorithm a);
std::string_view to_string(AssignAlgorithm a);
std::string_view to_string(Solver s);
TreeAlgorithm parse_tree_algorithm(const std::string& name);
AssignAlgorithm parse_assign_algorithm(const std::string& name);
Solver parse_solver(const std::string& name);

struct ShortestPathQuery {
  std::vector<Solver> solvers{Solver::Dspcnn, Solver::Pcnn, Solver::Dijkstra};
  LengthMode mode = LengthMode::Hops;
  NodeId goal = 0;
};

struct SweepPlan {
  std::vector<std::uint64_t> seeds;
  std::vector<int> channels;
  std::vector<TreeAlgorithm> trees;
};

struct Scenario {
  std::string id;
  std::filesystem::path file;

  // Exactly one network source is set.
  std::optional<std::string> fixture;
  std::optional<MeshNetwork> inline_network;
  std::optional<std::filesystem::path> network_file;
  std::optional<MeshParams> generate;

  TreeAlgorithm tree = TreeAlgorithm::Mcm;
  std::uint64_t tree_seed = 1;
  AssignAlgorithm assign = AssignAlgorithm::Ascending;
  int channels = 3;
  double delta = 0.5;
  // <= 0 means twice the communication range.
  double neighbor_radius = 0.0;

  std::optional<SimConfig> sim;
  // Goal given by label in the file is resolved once the network is known.
  std::optional<ShortestPathQuery> shortest_path;
  std::optional<std::string> goal_label;
  std::optional<SweepPlan> sweep;
};

// Throws ParseError for malformed documents and ValidationError for unknown
// keys, unknown algorithm names or out-of-range parameters.
Scenario parse_scenario(const Json& doc, const std::filesystem::path& file = {});
Scenario load_scenario(const std::filesystem::path& file);

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  int jobs = 1;
};

struct PipelineResult {
  MeshNetwork network;
  LevelDecomposition levels;
  MulticastTree tree;
  ChannelAssignment assignment;
  std::optional<SimMetrics> metrics;
  std::vector<PathResult> paths;
};

MeshNetwork resolve_network(const Scenario& scenario, const RunOptions& options = {});

// Generates/loads the network, builds the tree, assigns channels, and runs
// the simulator and shortest-path solvers when configured. Module errors are
// rethrown with the scenario file and step name prepended.
PipelineResult run_pipeline(const Scenario& scenario, const RunOptions& options = {});

// One metrics row per (seed, tree algorithm, channel count), in that nesting
// order. Seeds drive the network generator; fixture networks are reused.
std::vector<MetricsRow> run_sweep(const Scenario& scenario, const RunOptions& options = {});

// Runs the pipeline (and the sweep, when the scenario has one) and writes
// network.json, tree.json, assignment.json, metrics.csv, paths.txt and
// sweep.csv into out_dir as applicable. Returns the written paths.
std::vector<std::filesystem::path> run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                                                const RunOptions& options = {});

MetricsRow metrics_row(const Scenario& scenario, const std::string& scenario_id, TreeAlgorithm tree, int channels,
                       const MulticastTree& built, const SimMetrics& metrics);

}  // namespace meshcast
