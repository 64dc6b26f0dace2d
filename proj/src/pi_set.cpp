#include "dagmatch/pi_set.hpp"

#include <algorithm>

namespace dagmatch {

namespace {

// xs sorted by any preorder-consistent key (open position or rev_rank).
// When two entries are comparable the earlier one is the border (or a
// duplicate), so it is the one to drop. Returns the surviving count.
int reduce_preorder_ptr(const PatternIndex& idx, int* xs, int n) {
  const int* open = idx.open.data();
  const int* close = idx.close.data();
  int w = 0;
  for (int r = 0; r < n; ++r) {
    const int x = xs[r];
    while (w > 0) {
      int a = xs[w - 1];
      int b = x;
      if (a > b) std::swap(a, b);
      if (open[a] <= open[b] && open[b] <= close[a])
        --w;
      else
        break;
    }
    xs[w++] = x;
  }
  return w;
}

std::vector<int> map_through(const PatternIndex& idx,
                             std::span<const PISet> ins, int label) {
  std::vector<int> vals;
  for (const PISet& p : ins)
    for (int i : p.items) vals.push_back(idx.step(i, label));
  return vals;
}

// O(|vals|^2) dominance filter: of any comparable pair the smaller value is
// a border of the larger and drops out; duplicates collapse to one.
std::vector<int> pairwise_reduce(const PatternIndex& idx,
                                 std::vector<int> vals) {
  std::vector<char> dead(vals.size(), 0);
  for (std::size_t a = 0; a < vals.size(); ++a) {
    if (dead[a]) continue;
    for (std::size_t b = a + 1; b < vals.size(); ++b) {
      if (dead[b]) continue;
      if (vals[a] == vals[b]) {
        dead[b] = 1;
      } else if (idx.comparable(vals[a], vals[b])) {
        if (vals[a] < vals[b]) {
          dead[a] = 1;
          break;
        }
        dead[b] = 1;
      }
    }
  }
  std::vector<int> out;
  for (std::size_t a = 0; a < vals.size(); ++a)
    if (!dead[a]) out.push_back(vals[a]);
  return out;
}

PISet canonical(const PatternIndex& idx, std::vector<int> vals) {
  std::sort(vals.begin(), vals.end(),
            [&](int a, int b) { return idx.rev_rank[a] < idx.rev_rank[b]; });
  return PISet{std::move(vals)};
}

}  // namespace

PISet step_source(const PatternIndex& idx, int label) {
  return PISet{{idx.step(0, label)}};
}

std::vector<int> reduce_to_antichain(const PatternIndex& idx,
                                     const std::vector<int>& xs) {
  std::vector<int> out = xs;
  out.resize(reduce_preorder_ptr(idx, out.data(), static_cast<int>(out.size())));
  return out;
}

PISet merge_quadratic(const PatternIndex& idx, std::span<const PISet> ins,
                      int label) {
  if (ins.empty()) return step_source(idx, label);
  return canonical(idx, pairwise_reduce(idx, map_through(idx, ins, label)));
}

PISet merge_incremental(const PatternIndex& idx, std::span<const PISet> ins,
                        int label) {
  if (ins.empty()) return step_source(idx, label);
  std::vector<int> acc;
  for (const PISet& p : ins) {
    std::vector<int> next = acc;
    for (int i : p.items) next.push_back(idx.step(i, label));
    acc = pairwise_reduce(idx, std::move(next));
  }
  return canonical(idx, std::move(acc));
}

PISet merge_sorted(const PatternIndex& idx, std::span<const PISet> ins,
                   int label) {
  if (ins.empty()) return step_source(idx, label);
  std::vector<int> vals = map_through(idx, ins, label);
  std::sort(vals.begin(), vals.end(),
            [&](int a, int b) { return idx.open[a] < idx.open[b]; });
  vals.resize(
      reduce_preorder_ptr(idx, vals.data(), static_cast<int>(vals.size())));
  return canonical(idx, std::move(vals));
}

namespace {

// One input's contribution: items that extend directly keep their order in
// m_run; the rest jump through the automaton into e_run (in pre-append space,
// with a strictly-increasing-rank filter plus a full reduce), and the two
// rank-sorted runs merge into dst. Returns the merged length; dst is the
// still-unreduced candidate run. All buffers must hold n ints.
inline int merged_run(const PatternIndex& idx, const int* in, int n, int label,
                      int* mr, int* er, int* dst) {
  const int m = idx.m;
  const int* rank = idx.rev_rank.data();
  const int* codes = idx.codes.data();
  int nm = 0;
  int ne = 0;
  for (int t = 0; t < n; ++t) {
    const int i = in[t];
    if (i < m && codes[i] == label) {
      mr[nm++] = i + 1;  // extended survivor; input order carries over
    } else {
      const int z = idx.step(i, label);
      if (z == 0) continue;
      // Work on z-1 so ranks stay in pre-append space; keep only a
      // strictly increasing rank subsequence (drop the later offender).
      if (ne != 0 && rank[z - 1] <= rank[er[ne - 1]]) continue;
      er[ne++] = z - 1;
    }
  }
  ne = reduce_preorder_ptr(idx, er, ne);
  for (int t = 0; t < ne; ++t) ++er[t];  // re-append the label
  if (ne == 0) {
    for (int t = 0; t < nm; ++t) dst[t] = mr[t];
    return nm;
  }
  if (nm == 0) {
    for (int t = 0; t < ne; ++t) dst[t] = er[t];
    return ne;
  }
  int a = 0, b = 0, t = 0;
  while (a < nm && b < ne)
    dst[t++] = rank[mr[a]] < rank[er[b]] ? mr[a++] : er[b++];
  while (a < nm) dst[t++] = mr[a++];
  while (b < ne) dst[t++] = er[b++];
  return t;
}

}  // namespace

void merge_scratch_prepare(const PatternIndex& idx, MergeScratch& s) {
  const std::size_t need = 2 * static_cast<std::size_t>(idx.m) + 2;
  if (s.m_run.size() < need) s.m_run.resize(need);
  if (s.e_run.size() < need) s.e_run.resize(need);
  if (s.run.size() < need) s.run.resize(need);
  if (s.acc.size() < need) s.acc.resize(need);
  if (s.out.size() < need) s.out.resize(need);
}

void merge_linear_spans(const PatternIndex& idx,
                        std::span<const std::span<const int>> ins, int label,
                        MergeScratch& s) {
  const int* rank = idx.rev_rank.data();
  std::size_t cap = 1;
  for (const std::span<const int>& in : ins)
    if (in.size() > cap) cap = in.size();
  // A canonical input is an antichain, so cap <= m+1 and 2m+2 covers the
  // accumulator merges too; oversized non-canonical inputs still stay safe.
  const std::size_t need = std::max(cap * 2 + 2,
                                    2 * static_cast<std::size_t>(idx.m) + 2);
  if (s.acc.size() < need) {
    s.m_run.resize(need);
    s.e_run.resize(need);
    s.run.resize(need);
    s.acc.resize(need);
    s.out.resize(need);
  }
  int* mr = s.m_run.data();
  int* er = s.e_run.data();
  int* rr = s.run.data();
  int* ac = s.acc.data();
  int na = 0;
  for (std::span<const int> in : ins) {
    if (na == 0) {
      const int nr =
          merged_run(idx, in.data(), static_cast<int>(in.size()), label, mr,
                     er, ac);
      na = reduce_preorder_ptr(idx, ac, nr);
    } else {
      const int nr = merged_run(idx, in.data(), static_cast<int>(in.size()),
                                label, mr, er, rr);
      int* op = s.out.data();
      int a = 0, b = 0, t = 0;
      while (a < na && b < nr)
        op[t++] = rank[ac[a]] < rank[rr[b]] ? ac[a++] : rr[b++];
      while (a < na) op[t++] = ac[a++];
      while (b < nr) op[t++] = rr[b++];
      na = reduce_preorder_ptr(idx, op, t);
      for (int u = 0; u < na; ++u) ac[u] = op[u];
    }
  }
  // No survivors (or a source vertex): restart from the empty prefix.
  if (na == 0) ac[na++] = idx.step(0, label);
  s.n_acc = na;
}

int merge_linear_into(const PatternIndex& idx, const int* in, int n, int label,
                      MergeScratch& s, int* dst) {
  if (n <= 1) {
    // A one-element antichain needs no ordering machinery: its image under
    // the automaton (or the empty-prefix restart) is the whole result.
    const int z = n ? idx.step(in[0], label) : 0;
    dst[0] = z ? z : idx.step(0, label);
    return 1;
  }
  const int nr = merged_run(idx, in, n, label, s.m_run.data(),
                            s.e_run.data(), dst);
  int na = reduce_preorder_ptr(idx, dst, nr);
  if (na == 0) dst[na++] = idx.step(0, label);
  return na;
}

void merge_linear_one(const PatternIndex& idx, const int* in, int n, int label,
                      MergeScratch& s) {
  s.n_acc = merge_linear_into(idx, in, n, label, s, s.acc.data());
}

PISet merge_linear(const PatternIndex& idx, std::span<const PISet> ins,
                   int label) {
  std::vector<std::span<const int>> spans;
  spans.reserve(ins.size());
  for (const PISet& p : ins) spans.emplace_back(p.items);
  MergeScratch scratch;
  merge_linear_spans(idx, spans, label, scratch);
  return PISet{std::vector<int>(scratch.acc.data(),
                                scratch.acc.data() + scratch.n_acc)};
}

}  // namespace dagmatch
