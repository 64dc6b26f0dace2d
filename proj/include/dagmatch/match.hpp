#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dagmatch/graph.hpp"
#include "dagmatch/pattern.hpp"
#include "dagmatch/pi_set.hpp"

namespace dagmatch {

enum class MatchAlgo { baseline, w_param, s_k, t_k, st_k };
const char* algo_name(MatchAlgo a);

enum class MergeKind { quadratic, incremental, sorted, linear };

struct MatchParams {
  std::optional<uint64_t> w;
  std::optional<uint64_t> k_s;
  std::optional<uint64_t> k_t;
  std::optional<uint64_t> k_st;
};

struct MatchStats {
  int64_t vertices = 0;
  int64_t pi_mass = 0;  // sum of per-vertex PISet sizes (bit count for baseline)
};

// end_vertices semantics depend on the algorithm: occurrence end vertices for
// baseline / w_param / s_k, occurrence *start* vertices for t_k, and for st_k
// the ends of occurrences inside V1 plus the starts of occurrences inside V2;
// st_k occurrences spanning both sides are reported through witness_edges.
struct MatchReport {
  bool found = false;
  std::vector<int> end_vertices;
  std::vector<std::pair<int, int>> witness_edges;
  MatchAlgo algorithm = MatchAlgo::baseline;
  MatchParams params;
  MatchStats stats;
};

// Word-packed prefix-set propagation: B_v holds every i such that some path
// ending at v spells S[1..i]. O(m|E| / 64).
MatchReport match_baseline(const LabeledDag& dag, const PatternIndex& idx);

// Per-vertex prefix-incomparable sets via the chosen merge procedure.
std::vector<PISet> compute_pi_sets(const LabeledDag& dag,
                                   const PatternIndex& idx,
                                   MergeKind kind = MergeKind::linear);

MatchReport match_w_param(const LabeledDag& dag, const PatternIndex& idx);

// Pre: dag in S_k (caller-verified). Throws class_violation when a PISet
// exceeds k, which signals a wrong k.
MatchReport match_sk(const LabeledDag& dag, const PatternIndex& idx,
                     uint64_t k);

// Pre: dag in T_k. Runs match_sk on the reversed graph with idx_rev, the
// index of the reversed pattern; reported vertices are occurrence starts.
MatchReport match_tk(const LabeledDag& dag, const PatternIndex& idx_rev,
                     uint64_t k);

// Prefix-suffix table: ps(i, j) for i, j in {1..m} is true iff some border
// i' of (or equal to) prefix i and some border j' of (or equal to) the
// length-j suffix satisfy i' + j' = m with i', j' >= 1. Bit-packed, m^2 bits.
struct PSTable {
  int m = 0;
  int words_per_row = 0;
  std::vector<uint64_t> bits;

  bool at(int i, int j) const {
    if (i <= 0 || j <= 0) return false;
    const uint64_t word = bits[static_cast<size_t>(i) * words_per_row + (j >> 6)];
    return (word >> (j & 63)) & 1;
  }
};

// Throws ps_limit when m > max_m (the table is m^2 bits).
PSTable build_ps_table(const PatternIndex& idx, int max_m = 65536);

// True iff some i in pi_u, j in si_v with i, j >= 1 has ps(i, j).
bool cross_edge_match(const PISet& pi_u, const PISet& si_v, const PSTable& ps);

// Pre: dag in ST_k. Three phases: S_k pass on G[V1], T_k pass on G[V2],
// then every V1->V2 edge through the PS table (limited by ps_max).
MatchReport match_stk(const LabeledDag& dag, const PatternIndex& idx,
                      const PatternIndex& idx_rev, uint64_t k,
                      int ps_max = 65536);

// Cost-model dispatch over {baseline, w_param, s_k, t_k, st_k} with unit
// constants; ties break in the order s_k, t_k, st_k, w_param, baseline.
MatchReport match_auto(const LabeledDag& dag, const PatternIndex& idx,
                       const PatternIndex& idx_rev);

}  // namespace dagmatch
