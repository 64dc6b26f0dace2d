#pragma once

#include <span>
#include <vector>

#include "dagmatch/pattern.hpp"

namespace dagmatch {

// Antichain of prefix lengths: pairwise prefix-incomparable, sorted by
// ascending rev_rank. Never empty; {0} is the no-match state, and 0 appears
// only there.
struct PISet {
  std::vector<int> items;
  bool operator==(const PISet&) const = default;
};

// {1} when label matches S[1], else {0}.
PISet step_source(const PatternIndex& idx, int label);

// xs must be sorted by ascending open[.]; keeps the unique dominating
// antichain (drops any element comparable with a later one). Order-preserving
// and idempotent.
std::vector<int> reduce_to_antichain(const PatternIndex& idx,
                                     const std::vector<int>& xs);

// The four merge procedures compute the same set: the unique antichain
// dominating {A[i][label] : i in union(ins)} (with {0} when nothing
// survives, and step_source semantics when ins is empty).
PISet merge_quadratic(const PatternIndex& idx, std::span<const PISet> ins,
                      int label);
PISet merge_incremental(const PatternIndex& idx, std::span<const PISet> ins,
                        int label);
PISet merge_sorted(const PatternIndex& idx, std::span<const PISet> ins,
                   int label);
PISet merge_linear(const PatternIndex& idx, std::span<const PISet> ins,
                   int label);

// Allocation-reusing core behind merge_linear, for matcher loops. The
// vectors are grow-only raw buffers; after a merge the result occupies
// acc[0 .. n_acc) and acc.size() is meaningless.
struct MergeScratch {
  std::vector<int> m_run;
  std::vector<int> e_run;
  std::vector<int> run;
  std::vector<int> acc;
  std::vector<int> out;
  int n_acc = 0;
};

// Grows the scratch buffers once so the merge entries below never have to
// check capacities (every intermediate run fits in 2m+2 ints).
void merge_scratch_prepare(const PatternIndex& idx, MergeScratch& scratch);

// ins are views of canonical PISet item arrays. Result left in
// scratch.acc[0 .. scratch.n_acc).
void merge_linear_spans(const PatternIndex& idx,
                        std::span<const std::span<const int>> ins, int label,
                        MergeScratch& scratch);

// Single-input fast path, same result as merge_linear_spans with one span.
// Requires merge_scratch_prepare to have run on scratch.
void merge_linear_one(const PatternIndex& idx, const int* in, int n,
                      int label, MergeScratch& scratch);

// As merge_linear_one, but writes the result to dst (which must hold
// max(n, 1) ints and may not overlap the scratch buffers; in may point
// into the same arena as long as it ends at or before dst). Returns the
// result length.
int merge_linear_into(const PatternIndex& idx, const int* in, int n,
                      int label, MergeScratch& scratch, int* dst);

}  // namespace dagmatch
