#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dagmatch/graph.hpp"

namespace dagmatch {

// Per-vertex path counts: mu_s(v) = source-to-v paths, mu_t(v) = v-to-sink
// paths. In capped mode every value is clamped to cap+1, which stands for
// "> cap". In exact mode (cap = nullopt) sums above 2^63-1 throw overflow.
struct FunnelProfile {
  std::optional<uint64_t> cap;
  std::vector<uint64_t> mu_s;
  std::vector<uint64_t> mu_t;

  bool saturated(uint64_t x) const { return cap && x > *cap; }
  // mu(e) = mu_s(u) * mu_t(v), saturating in capped mode.
  uint64_t mu_edge(int u, int v) const;
};

FunnelProfile path_counts(const LabeledDag& dag,
                          std::optional<uint64_t> cap = std::nullopt);

// Shortest-kind forbidden path: first vertex merging (indeg > 1), last
// forking (outdeg > 1), interior vertices with indeg = outdeg = 1.
// Works on general directed graphs. Deterministic: scans in index order.
std::optional<std::vector<int>> find_minimal_forbidden_path(const Digraph& g);

struct Partition {
  std::vector<int> v1;  // out-forest side (mu_s <= certified_k)
  std::vector<int> v2;  // in-forest side
  uint64_t certified_k = 0;
};

// Funnel recognition by BFS: visits vertices with indeg <= 1 from the
// sources; accepts iff no edge re-enters the visited side and every
// unvisited vertex has outdeg <= 1. Returns the certified partition.
std::optional<Partition> is_funnel_bfs(const LabeledDag& dag);

// Source-to-sink path (length >= 1) using only edges with mu(e) > k, if any.
std::optional<std::vector<int>> k_shared_witness(const LabeledDag& dag,
                                                 uint64_t k);
bool is_k_funnel(const LabeledDag& dag, uint64_t k);

// Smallest k with is_k_funnel(dag, k), by exponential + binary search over
// capped path counts (arithmetic never exceeds 2k+2).
uint64_t min_k_funnel_search(const LabeledDag& dag);

// Same value via the bottleneck (widest) path over exact mu; throws overflow
// when exact counts leave 64 bits.
uint64_t min_k_funnel_widest(const LabeledDag& dag);

struct SatValue {
  uint64_t value = 0;      // exact, or the cap when saturated
  bool saturated = false;  // true value is > cap
};

struct ClassMinK {
  SatValue k_s;   // max mu_s
  SatValue k_t;   // max mu_t
  SatValue k_st;  // max min(mu_s, mu_t)
};
ClassMinK class_min_k(const LabeledDag& dag,
                      std::optional<uint64_t> cap = std::nullopt);

// V1 = {v : mu_s(v) <= k}, V2 = rest. Verifies no V2->V1 edge, G[V1] in S_k
// and G[V2] in T_k before returning; throws not_in_class otherwise.
Partition st_partition(const LabeledDag& dag, uint64_t k);

struct ContainmentRecord {
  uint64_t k = 0;
  bool in_sk = false;
  bool in_tk = false;
  bool k_funnel = false;
  bool in_stk = false;
  bool chain_holds = false;  // (in_sk or in_tk) => k_funnel => in_stk
};
ContainmentRecord containment_check(const LabeledDag& dag, uint64_t k);

// Acyclic and forbidden-path-free. Accepts general directed graphs.
bool is_funnel_graph(const Digraph& g);

}  // namespace dagmatch
