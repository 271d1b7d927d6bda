#include "meshcast/fixtures.hpp"

#include <string>
#include <vector>

namespace meshcast::fixtures {

MeshNetwork level_example() {
  // s a b c d g e f
  std::vector<Point> positions{{0, 0},      {-50, -80},  {50, -80}, {-50, -160},
                               {50, -160},  {0, -240},   {130, -150}, {-100, -240}};
  const Edge edges[] = {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {2, 6}, {3, 7}, {3, 5}, {4, 5}};
  return MeshNetwork::with_edges(std::move(positions), 100.0, 0, {5, 6, 7}, edges,
                                 {"s", "a", "b", "c", "d", "g", "e", "f"});
}

MeshNetwork relay_example() {
  std::vector<Point> positions{{0, 0},      {-60, -80},  {60, -80},  {-30, -160},
                               {60, -160},  {-90, -240}, {0, -240},  {90, -240}};
  // Labels 1..8 map to ids 0..7.
  const Edge edges[] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {3, 6}, {3, 7}, {4, 6}, {4, 7}};
  return MeshNetwork::with_edges(std::move(positions), 100.0, 0, {5, 6, 7}, edges,
                                 {"1", "2", "3", "4", "5", "6", "7", "8"});
}

std::optional<MeshNetwork> by_name(std::string_view name) {
  if (name == "level_example") return level_example();
  if (name == "relay_example") return relay_example();
  return std::nullopt;
}

}  // namespace meshcast::fixtures
