#pragma once

#include <string_view>
#include <vector>

#include "dagmatch/graph.hpp"

namespace dagmatch {

// KMP failure function over code sequence s (conceptually 1-indexed S[1..m]).
// Returned vector has size m+1; fail[0] = 0 is unused.
std::vector<int> failure_function(const std::vector<int>& codes);

// Matching automaton: (m+1) x sigma table. A[i][a] is the longest l <= m with
// S[1..l] a suffix of S[1..i].a; at i = m the transition re-enters through the
// longest proper border.
std::vector<int> matching_automaton(const std::vector<int>& codes, int sigma,
                                    const std::vector<int>& fail);

// Balanced-parenthesis encoding of the failure tree (root 0, parent fail[i],
// children visited in increasing index). open/close positions per node.
void build_bp(const std::vector<int>& fail, std::vector<int>& open,
              std::vector<int>& close);

// Number of leaves of the failure tree: nodes of {0..m} outside fail's image.
int leaf_count(const std::vector<int>& fail);

// rev_rank[i]: rank of the reversed prefix (S[1..i])^r among all reversed
// prefixes, ordered as in the suffix tree of S^r (lexicographic, with a
// sentinel smaller than every code so a prefix sorts before its extensions).
// Realized as the inverse suffix array of S^r + sentinel.
std::vector<int> reversed_suffix_order(const std::vector<int>& codes);

struct PatternIndex {
  std::vector<int> codes;  // S, stored 0-indexed
  int m = 0;
  int sigma = 0;
  std::vector<int> fail;      // size m+1
  std::vector<int> fail_rev;  // failure function of S^r
  std::vector<int> autom;     // (m+1) x sigma, row-major
  std::vector<int> open, close;
  std::vector<int> rev_rank;  // size m+1
  int leaves = 0;             // w

  int at(int i) const { return codes[i - 1]; }  // S[i], 1-indexed
  int step(int state, int a) const { return autom[state * sigma + a]; }

  // True iff S[1..min(i,j)] is a border of (or equal to) S[1..max(i,j)],
  // i.e. the shallower node is a failure-tree ancestor of the deeper one.
  bool comparable(int i, int j) const {
    if (i > j) std::swap(i, j);
    return open[i] <= open[j] && open[j] <= close[i];
  }
};

// Throws empty_pattern when codes is empty; every code must be < sigma.
PatternIndex build_pattern_index(std::vector<int> codes, int sigma);

// Convenience for tests and tools: alphabet built from the pattern itself.
PatternIndex index_from_string(std::string_view pattern);

}  // namespace dagmatch
