#include <doctest.h>

#include "meshcast/error.hpp"
#include "meshcast/fixtures.hpp"
#include "meshcast/serialize.hpp"
#include "meshcast/topology.hpp"
#include "oracles.hpp"

using namespace meshcast;

namespace {

NodeId id(const MeshNetwork& net, const char* label) { return *net.find_label(label); }

MeshNetwork chain3() {
  const Edge edges[] = {{0, 1}, {1, 2}};
  return MeshNetwork::with_edges({{0, 0}, {1, 0}, {2, 0}}, 1.0, 0, {2}, edges, {"s", "x", "y"});
}

}  // namespace

TEST_CASE("unit disk adjacency follows the range") {
  const auto net = MeshNetwork::unit_disk({{0, 0}, {3, 4}, {10, 0}}, 5.0, 0, {1});
  CHECK(net.adjacent(0, 1));  // exactly at range
  CHECK(net.adjacent(1, 0));
  CHECK_FALSE(net.adjacent(0, 2));
  CHECK_FALSE(net.adjacent(0, 0));
  CHECK(net.edge_count() == 1);
}

TEST_CASE("network construction rejects bad input") {
  CHECK_THROWS_AS(MeshNetwork::unit_disk({{0, 0}}, 0.0, 0, {}), Error);
  CHECK_THROWS_AS(MeshNetwork::unit_disk({{0, 0}, {1, 1}}, 1.0, 0, {0}), Error);
  CHECK_THROWS_AS(MeshNetwork::unit_disk({{0, 0}, {1, 1}}, 1.0, 0, {5}), Error);
  const Edge loop[] = {{1, 1}};
  CHECK_THROWS_AS(MeshNetwork::with_edges({{0, 0}, {1, 1}}, 1.0, 0, {}, loop), Error);
}

TEST_CASE("generate_random_mesh") {
  SUBCASE("two nodes in a small square are always linked") {
    const auto net = generate_random_mesh({2, 10.0, 20.0, 1, 7});
    CHECK(net.node_count() == 2);
    CHECK(net.edge_count() == 1);
    CHECK(net.receivers() == std::vector<NodeId>{1});
    CHECK(net.source() == 0);
  }
  SUBCASE("same seed gives byte-identical documents") {
    const auto a = canonical(to_json(generate_random_mesh({30, 1000.0, 250.0, 5, 42})));
    const auto b = canonical(to_json(generate_random_mesh({30, 1000.0, 250.0, 5, 42})));
    CHECK(a == b);
    const auto c = canonical(to_json(generate_random_mesh({30, 1000.0, 250.0, 5, 43})));
    CHECK(a != c);
  }
  SUBCASE("sparse placement is unsatisfiable") {
    try {
      (void)generate_random_mesh({5, 10000.0, 1.0, 1, 1});
      FAIL("expected UNSATISFIABLE");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unsatisfiable);
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(generate_random_mesh({1, 10.0, 1.0, 1, 1}), Error);
    CHECK_THROWS_AS(generate_random_mesh({5, 10.0, 1.0, 5, 1}), Error);
    CHECK_THROWS_AS(generate_random_mesh({5, 10.0, 1.0, 0, 1}), Error);
  }
  SUBCASE("generated instances satisfy the network invariants") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto net = generate_random_mesh({30, 1000.0, 250.0, 5, seed});
      for (const auto& [u, v] : net.edges()) CHECK(distance(net.position(u), net.position(v)) <= 250.0);
      for (std::size_t u = 0; u < net.node_count(); ++u)
        for (std::size_t v = u + 1; v < net.node_count(); ++v)
          if (distance(net.positions()[u], net.positions()[v]) <= 250.0) CHECK(net.adjacent(int(u), int(v)));
      CHECK(net.receivers().size() == 5);
      CHECK_NOTHROW(bfs_levels(net));
    }
  }
}

TEST_CASE("bfs_levels on the level example") {
  const auto net = fixtures::level_example();
  const auto lv = bfs_levels(net);
  CHECK(lv.level_of(id(net, "s")) == 0);
  CHECK(lv.level_of(id(net, "a")) == 1);
  CHECK(lv.level_of(id(net, "b")) == 1);
  for (const char* n : {"c", "d", "e"}) CHECK(lv.level_of(id(net, n)) == 2);
  for (const char* n : {"f", "g"}) CHECK(lv.level_of(id(net, n)) == 3);
  CHECK(lv.parents[std::size_t(id(net, "g"))] == std::vector<NodeId>{id(net, "c"), id(net, "d")});
  CHECK(lv.parents[std::size_t(id(net, "c"))] == std::vector<NodeId>{id(net, "a")});
}

TEST_CASE("bfs_levels small cases") {
  SUBCASE("isolated source") {
    const auto lv = bfs_levels(MeshNetwork::unit_disk({{0, 0}}, 1.0, 0, {}));
    CHECK(lv.level == std::vector<int>{0});
    CHECK(lv.parents[0].empty());
  }
  SUBCASE("chain") {
    const auto lv = bfs_levels(chain3());
    CHECK(lv.level == std::vector<int>{0, 1, 2});
    CHECK(lv.parents[2] == std::vector<NodeId>{1});
  }
  SUBCASE("unreachable receiver") {
    const auto net = MeshNetwork::unit_disk({{0, 0}, {1, 0}, {50, 0}}, 2.0, 0, {2});
    try {
      (void)bfs_levels(net);
      FAIL("expected UNREACHABLE_RECEIVER");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnreachableReceiver);
    }
  }
}

TEST_CASE("bfs_levels matches relaxation oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto net = generate_random_mesh({12, 400.0, 160.0, 2, seed});
    const auto lv = bfs_levels(net);
    CHECK(lv.level == oracle::hop_distances(net));
    for (std::size_t v = 0; v < net.node_count(); ++v) {
      const auto& ps = lv.parents[v];
      CHECK(std::is_sorted(ps.begin(), ps.end()));
      for (NodeId p : ps) {
        CHECK(lv.level[std::size_t(p)] == lv.level[v] - 1);
        CHECK(net.adjacent(p, NodeId(v)));
      }
      if (lv.level[v] > 0) CHECK_FALSE(ps.empty());
    }
  }
}

TEST_CASE("build_tree_mesh removes exactly the same-level edges") {
  SUBCASE("triangle") {
    const Edge edges[] = {{0, 1}, {0, 2}, {1, 2}};
    const auto net = MeshNetwork::with_edges({{0, 0}, {1, 0}, {0, 1}}, 1.0, 0, {1, 2}, edges);
    const auto tm = build_tree_mesh(net, bfs_levels(net));
    CHECK(tm.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
  }
  SUBCASE("level example keeps every inter-level edge") {
    const auto net = fixtures::level_example();
    const auto tm = build_tree_mesh(net, bfs_levels(net));
    CHECK(tm.edges() == net.edges());
  }
  SUBCASE("no same-level edges is a no-op") {
    const auto net = chain3();
    CHECK(build_tree_mesh(net, bfs_levels(net)).edges() == net.edges());
  }
  SUBCASE("random instances") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto net = generate_random_mesh({25, 800.0, 250.0, 4, seed});
      const auto lv = bfs_levels(net);
      const auto tm = build_tree_mesh(net, lv);
      std::size_t same_level = 0;
      for (const auto& [u, v] : net.edges()) same_level += lv.level_of(u) == lv.level_of(v);
      CHECK(tm.edge_count() + same_level == net.edge_count());
      for (const auto& [u, v] : tm.edges()) CHECK(lv.level_of(u) != lv.level_of(v));
      for (std::size_t v = 0; v < net.node_count(); ++v) {
        if (lv.level[v] > 0) CHECK_FALSE(tm.parents(NodeId(v)).empty());
      }
    }
  }
}

TEST_CASE("network documents round-trip") {
  for (const auto& net : {fixtures::level_example(), generate_random_mesh({15, 500.0, 200.0, 3, 9})}) {
    const auto text = canonical(to_json(net));
    const auto back = network_from_json(Json::parse(text));
    CHECK(canonical(to_json(back)) == text);
    CHECK(back.edges() == net.edges());
  }
  CHECK_THROWS_AS(network_from_json(Json::parse(R"({"nodes":[],"range":1,"source":0,"receivers":[]})")), Error);
}
