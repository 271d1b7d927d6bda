// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "meshcast/error.hpp"
#include "meshcast/fixtures.hpp"
#include "meshcast/interference.hpp"
#include "meshcast/lca.hpp"
#include "meshcast/mcm.hpp"
#include "meshcast/scenario.hpp"
#include "meshcast/serialize.hpp"
#include "meshcast/shortest_path.hpp"
#include "meshcast/simulator.hpp"
#include "oracles.hpp"

using namespace meshcast;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = out.ok;
  if (limit_s > 0 && secs >= limit_s) {
    ok = false;
    out.detail += " (over " + std::to_string(limit_s) + " s limit)";
  }
  if (!ok) ++failures;
  std::printf("[%s] %2d %-44s %8.3f s  %s\n", ok ? "PASS" : "FAIL", id, name, secs, out.detail.c_str());
  std::fflush(stdout);
}

using LabelEdges = std::set<std::pair<std::string, std::string>>;

LabelEdges labelled(const MeshNetwork& net, const MulticastTree& tree) {
  LabelEdges out;
  for (const auto& [c, p] : tree.edges()) out.emplace(net.label(c), net.label(p));
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

MeshParams instance(std::uint64_t seed) { return {30, 1000.0, 250.0, 5, seed}; }

// Shared between the relay-count and depth criteria.
int depth_violations = -1;

Outcome level_example() {
  const auto net = fixtures::level_example();
  const auto lv = bfs_levels(net);
  const auto tree = lca_build_tree(build_tree_mesh(net, lv), net.receivers(), fixtures::kLevelExampleSeed);
  const LabelEdges expected{{"g", "d"}, {"d", "b"}, {"b", "s"}, {"e", "b"}, {"f", "c"}, {"c", "a"}, {"a", "s"}};
  if (labelled(net, tree) != expected) return {false, "tree edges differ"};
  const auto a = lca_assign_channels(tree, lv, 4);
  for (NodeId v : tree.nodes) {
    if (tree.forwards(v) && a.si_of(v) != lv.level_of(v)) return {false, "si of " + net.label(v) + " != level"};
    if (v != tree.source && a.ri_of(v) != lv.level_of(v) - 1) return {false, "ri of " + net.label(v) + " != level-1"};
  }
  return {true, "7 edges, si = level"};
}

Outcome relay_example() {
  const auto net = fixtures::relay_example();
  const auto tree = mcm_build_tree(build_tree_mesh(net, bfs_levels(net)), net.receivers());
  std::set<std::string> relays;
  for (NodeId v : tree.relays()) relays.insert(net.label(v));
  if (relays != std::set<std::string>{"2", "4"}) return {false, "relays differ"};
  const LabelEdges expected{{"6", "4"}, {"7", "4"}, {"8", "4"}, {"4", "2"}, {"2", "1"}};
  if (labelled(net, tree) != expected) return {false, "tree edges differ"};
  return {true, "relays {4,2}, 5 edges"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 50);
  for (int i = 0; i < 1000; ++i) {
    const int n = size(rng);
    std::uniform_int_distribution<int> extra(0, 2 * n);
    const auto g = oracle::random_connected_graph(rng, n, extra(rng), 20);
    const double expect = oracle::all_pairs(g)[static_cast<std::size_t>(g.source())][static_cast<std::size_t>(g.goal())];
    const auto d = dijkstra_oracle(g);
    const auto p = pcnn_shortest_path(g);
    const auto ds = dspcnn_shortest_path(g);
    for (const auto* r : {&d, &p, &ds}) {
      if (r->length != expect) return {false, "instance " + std::to_string(i) + ": " + r->solver + " length " + fmt(r->length) + " != " + fmt(expect)};
      if (r->path.empty() || r->path.front() != g.source() || r->path.back() != g.goal())
        return {false, "instance " + std::to_string(i) + ": " + r->solver + " path endpoints"};
      if (oracle::path_length(g, r->path) != r->length)
        return {false, "instance " + std::to_string(i) + ": " + r->solver + " path does not sum to length"};
    }
  }
  return {true, "1000/1000 exact"};
}

Outcome search_space() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> cell(0, 399);
  double dual = 0.0, single = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto g = oracle::grid_graph(20, 20, cell(rng), cell(rng));
    dual += static_cast<double>(dspcnn_shortest_path(g).fired_count);
    single += static_cast<double>(pcnn_shortest_path(g).fired_count);
  }
  const double ratio = dual / single;
  return {ratio < 0.9, "mean fired ratio " + fmt(ratio)};
}

// Targets per level rebuilt from the finished tree; the level's forwarding
// nodes must cover them through mesh edges.
Outcome relay_dominance() {
  int not_worse = 0, covers_checked = 0, brute_checked = 0;
  depth_violations = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto net = generate_random_mesh(instance(seed));
    const auto lv = bfs_levels(net);
    const auto mesh = build_tree_mesh(net, lv);
    const auto mcm = mcm_build_tree(mesh, net.receivers());
    const auto lca = lca_build_tree(mesh, net.receivers(), seed);
    not_worse += mcm.relays().size() <= lca.relays().size();
    for (NodeId r : net.receivers()) depth_violations += mcm.depth(r) != oracle::hop_distances(net)[static_cast<std::size_t>(r)];

    int deepest = 0;
    for (NodeId r : net.receivers()) deepest = std::max(deepest, lv.level_of(r));
    for (int l = deepest - 1; l >= 0; --l) {
      std::set<NodeId> targets, chosen;
      for (NodeId v : mcm.nodes) {
        if (lv.level_of(v) == l + 1) targets.insert(v);
        if (lv.level_of(v) == l && mcm.forwards(v)) chosen.insert(v);
      }
      for (NodeId t : targets) {
        const auto p = mcm.parent(t);
        if (!p || !chosen.count(*p) || !net.adjacent(t, *p))
          return {false, "seed " + std::to_string(seed) + ": invalid cover at level " + std::to_string(l)};
      }
      ++covers_checked;
      const auto inst = relay_cover_instance(mesh, l, targets);
      if (inst.candidates.size() <= 10) {
        ++brute_checked;
        if (static_cast<int>(chosen.size()) != oracle::min_cover_size(inst.targets, inst.candidates))
          return {false, "seed " + std::to_string(seed) + ": level " + std::to_string(l) + " cover above brute-force minimum"};
      }
    }
  }
  return {not_worse >= 180, std::to_string(not_worse) + "/200 not worse; " + std::to_string(covers_checked) +
                                " covers valid, " + std::to_string(brute_checked) + " at brute-force minimum"};
}

Outcome depth_property() {
  if (depth_violations < 0) return {false, "relay-count criterion did not run"};
  return {depth_violations == 0, std::to_string(depth_violations) + " violations"};
}

Outcome heuristic_dominance() {
  double heuristic = 0.0, ascending = 0.0;
  int violations = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto net = generate_random_mesh(instance(seed));
    const auto tree = mcm_build_tree(build_tree_mesh(net, bfs_levels(net)), net.receivers());
    const double R = net.comm_range(), radius = 2 * R;
    const InterferenceParams p{R, 0.5};
    const auto h = heuristic_assignment(tree, net, {3, 0.5, radius});
    heuristic += total_interference(tree, h, net, p, radius);
    ascending += total_interference(tree, ascending_assignment(tree, 3), net, p, radius);

    std::vector<NodeId> earlier;
    for (NodeId u : tree.forwarding_order()) {
      std::vector<int> channels;
      for (NodeId v : earlier)
        if (distance(net.position(u), net.position(v)) <= radius) channels.push_back(*h.si_of(v));
      const double chosen = oracle::naive_objective(R, 0.5, *h.si_of(u), channels);
      for (int c = 0; c < 3; ++c) violations += chosen > oracle::naive_objective(R, 0.5, c, channels) * (1 + 1e-12);
      earlier.push_back(u);
    }
  }
  return {heuristic <= ascending && violations == 0, "mean sum IR^2 heuristic " + fmt(heuristic / 100) +
                                                         " vs ascending " + fmt(ascending / 100) + ", " +
                                                         std::to_string(violations) + " local-optimality violations"};
}

Outcome channel_diversity() {
  int holds = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto net = generate_random_mesh(instance(seed));
    const auto tree = mcm_build_tree(build_tree_mesh(net, bfs_levels(net)), net.receivers());
    SimConfig cfg;
    cfg.slots = 500;
    cfg.seed = seed;
    const double t3 = simulate_multicast(net, tree, ascending_assignment(tree, 3), cfg).throughput;
    const double t1 = simulate_multicast(net, tree, ascending_assignment(tree, 1), cfg).throughput;
    holds += t3 >= t1;
  }
  return {holds >= 95, std::to_string(holds) + "/100 with C=3 >= C=1"};
}

Outcome determinism(const fs::path& scenario_dir, const fs::path& work) {
  std::vector<Scenario> scenarios;
  for (const char* f : {"level_example_lca.json", "relay_example_mcm.json", "random_heuristic.json",
                        "sweep_channels.json", "sweep_trees.json"})
    scenarios.push_back(load_scenario(scenario_dir / f));
  const char* variants[] = {
      R"({"id": "gen-lca", "network": {"generate": {"nodes": 30, "side": 1000, "range": 250, "receivers": 5, "seed": 3}},
          "tree": {"algorithm": "lca", "seed": 9}, "assign": {"algorithm": "lca", "channels": 3},
          "simulate": {"slots": 200, "rate": 1, "seed": 4}})",
      R"({"id": "gen-ascending", "network": {"generate": {"nodes": 40, "side": 1200, "range": 250, "receivers": 8, "seed": 11}},
          "tree": {"algorithm": "mcm"}, "assign": {"algorithm": "ascending", "channels": 4},
          "simulate": {"slots": 300, "rate": 0.5, "seed": 2}})",
      R"({"id": "gen-heuristic", "network": {"generate": {"nodes": 25, "side": 800, "range": 200, "receivers": 4, "seed": 5}},
          "tree": {"algorithm": "mcm"}, "assign": {"algorithm": "heuristic", "channels": 3, "delta": 0.3},
          "simulate": {"slots": 200, "rate": 1, "seed": 8},
          "shortest_path": {"solvers": ["dspcnn", "pcnn", "dijkstra"], "mode": "euclidean", "goal": 3}})",
      R"({"id": "relay-heuristic", "network": {"fixture": "relay_example"},
          "tree": {"algorithm": "mcm"}, "assign": {"algorithm": "heuristic", "channels": 2},
          "simulate": {"slots": 100, "rate": 1, "seed": 1}})",
      R"({"id": "gen-sweep", "network": {"generate": {"nodes": 30, "side": 1000, "range": 250, "receivers": 5, "seed": 1}},
          "tree": {"algorithm": "mcm"}, "assign": {"algorithm": "heuristic", "channels": 3},
          "simulate": {"slots": 150, "rate": 1, "seed": 3},
          "sweep": {"seeds": {"start": 1, "count": 10}, "channels": [1, 2, 3], "trees": ["lca", "mcm"]}})"};
  for (const char* text : variants) scenarios.push_back(parse_scenario(Json::parse(text)));

  std::size_t compared = 0;
  for (const auto& sc : scenarios) {
    const auto a = run_scenario(sc, work / sc.id / "a", {std::nullopt, 1});
    const auto b = run_scenario(sc, work / sc.id / "b", {std::nullopt, 3});
    if (a.size() != b.size()) return {false, sc.id + ": different artifact sets"};
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].filename() != b[i].filename() || slurp(a[i]) != slurp(b[i]))
        return {false, sc.id + ": " + a[i].filename().string() + " differs"};
      ++compared;
    }
  }
  return {scenarios.size() == 10, std::to_string(scenarios.size()) + " scenarios, " + std::to_string(compared) +
                                      " artifacts byte-identical"};
}

Outcome formula() {
  auto rel = [](double got, double want) { return std::abs(got - want) <= 1e-9 * std::abs(want); };
  if (!rel(interference_range(0, 0, {250, 0.5}), 250.0)) return {false, "(0,0,250,0.5)"};
  if (!rel(interference_range(0, 2, {250, 0.5}), 62.5)) return {false, "(0,2,250,0.5)"};
  if (!rel(interference_range(3, 1, {100, 0.8}), 64.0)) return {false, "(3,1,100,0.8)"};
  int checks = 0;
  for (double delta : {0.1, 0.5, 0.8, 1.0}) {
    const InterferenceParams p{250.0, delta};
    double prev = interference_range(0, 0, p);
    for (int sep = 0; sep <= 10; ++sep) {
      for (int base = 0; base <= 5; ++base) {
        if (interference_range(base, base + sep, p) != interference_range(base + sep, base, p))
          return {false, "asymmetric at separation " + std::to_string(sep)};
        if (interference_range(base, base + sep, p) != interference_range(0, sep, p))
          return {false, "depends on more than the separation"};
        ++checks;
      }
      const double cur = interference_range(0, sep, p);
      if (cur > prev) return {false, "increases at separation " + std::to_string(sep)};
      if (delta < 1.0 && sep > 0 && !(cur < prev)) return {false, "not strictly decreasing for delta < 1"};
      prev = cur;
    }
  }
  return {true, "hand values within 1e-9, " + std::to_string(checks) + " symmetry checks"};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path scenario_dir = argc > 1 ? fs::path(argv[1]) : fs::path(MESHCAST_SCENARIO_DIR);
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "meshcast_acceptance";
  fs::remove_all(work);

  report(1, "level example: LCA tree and channels", 1, level_example);
  report(2, "relay example: MCM relays and edges", 1, relay_example);
  report(3, "dspcnn = pcnn = dijkstra on 1000 graphs", 60, oracle_equivalence);
  report(4, "dspcnn search space on 20x20 grid", 30, search_space);
  report(5, "MCM relay count vs LCA, cover checks", 60, relay_dominance);
  report(6, "MCM receiver depth = BFS level", 0, depth_property);
  report(7, "heuristic vs ascending interference", 30, heuristic_dominance);
  report(8, "throughput C=3 vs C=1 on MCM trees", 120, channel_diversity);
  report(9, "byte-identical reruns", 0, [&] { return determinism(scenario_dir, work); });
  report(10, "interference range formula", 0, formula);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
