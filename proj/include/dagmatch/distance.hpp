#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dagmatch/graph.hpp"

namespace dagmatch {

enum class DeletionMode { vertex, edge };

// The certificate lists exactly d deletions of the relevant mode; applying
// them to the input yields a funnel (re-verified before returning).
struct DistanceResult {
  DeletionMode mode = DeletionMode::vertex;
  int d = 0;
  std::vector<int> deleted_vertices;
  std::vector<std::pair<int, int>> deleted_edges;
  int64_t nodes_explored = 0;
  int max_branch = 0;
};

// Iterative-deepening branching on a minimal forbidden path: vertex mode
// branches on its endpoints plus up to two in-/out-neighbors (<= 6 children);
// edge mode contracts the path to length 1, then branches on that edge plus
// up to two incident edges per side (<= 5). Remaining vertex-disjoint cycles
// cost one deletion each. nullopt when no solution within max_d exists.
std::optional<DistanceResult> deletion_distance(const Digraph& g,
                                                DeletionMode mode, int max_d);

// Subset enumeration in increasing size; first funnel wins.
std::optional<DistanceResult> brute_force_distance(const Digraph& g,
                                                   DeletionMode mode,
                                                   int max_d);

}  // namespace dagmatch
