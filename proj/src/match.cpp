#include "dagmatch/match.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <span>

#include "dagmatch/error.hpp"
#include "dagmatch/funnel.hpp"

namespace dagmatch {

namespace {

void check_labels(const Digraph& g, const PatternIndex& idx) {
  for (int c : g.labels)
    if (c < 0 || c >= idx.sigma)
      fail(Errc::invalid_spec, "vertex label outside the pattern alphabet");
}

// Arena-backed propagation of per-vertex prefix-incomparable sets in
// topological order. bound, when set, is the class parameter k.
struct PiCore {
  std::vector<int> pool;
  std::vector<size_t> off;
  std::vector<int> len;
  std::vector<int> ends;  // vertices whose set contains m, in topo order
  int64_t mass = 0;
};

PiCore run_pi_core(const LabeledDag& dag, const PatternIndex& idx,
                   std::optional<uint64_t> bound) {
  const Digraph& g = dag.g;
  check_labels(g, idx);
  PiCore c;
  c.off.assign(g.n, 0);
  c.len.assign(g.n, 0);
  c.pool.resize(static_cast<size_t>(g.n) * 2 + 16);
  size_t pool_n = 0;
  size_t pool_cap = c.pool.size();
  int* pool_base = c.pool.data();
  size_t* off = c.off.data();
  int* lenp = c.len.data();
  const uint64_t bnd =
      bound ? *bound : std::numeric_limits<uint64_t>::max();
  MergeScratch scratch;
  merge_scratch_prepare(idx, scratch);
  std::vector<std::span<const int>> spans;
  const int m = idx.m;
  const int* in_start = dag.in_start.data();
  const int* in_flat = dag.in_flat.data();
  const int* labels = g.labels.data();
  int64_t mass = 0;
  auto ensure = [&](size_t need) {
    if (need > pool_cap) {
      c.pool.resize(std::max(need, pool_cap * 2));
      pool_cap = c.pool.size();
      pool_base = c.pool.data();
    }
  };
  for (int v : dag.topo) {
    const int pb = in_start[v];
    const int pe = in_start[v + 1];
    int sz;
    if (pe - pb == 1) {
      // Merge straight into the arena: a merge result never exceeds
      // max(|input|, 1), and the input lives strictly below pool_n.
      const int u = in_flat[pb];
      const int ln = lenp[u];
      ensure(pool_n + ln + 1);
      sz = merge_linear_into(idx, pool_base + off[u], ln, labels[v], scratch,
                             pool_base + pool_n);
    } else if (pe == pb) {
      ensure(pool_n + 1);
      sz = merge_linear_into(idx, pool_base, 0, labels[v], scratch,
                             pool_base + pool_n);
    } else {
      spans.clear();
      for (int p = pb; p < pe; ++p) {
        const int u = in_flat[p];
        spans.emplace_back(pool_base + off[u],
                           static_cast<size_t>(lenp[u]));
      }
      merge_linear_spans(idx, spans, labels[v], scratch);
      sz = scratch.n_acc;
      ensure(pool_n + sz);
      std::copy_n(scratch.acc.data(), sz, pool_base + pool_n);
    }
    if (static_cast<uint64_t>(sz) > bnd)
      fail(Errc::class_violation, "prefix set exceeds the class bound");
    const int* pp = pool_base + pool_n;
    bool hit = false;
    for (int t = 0; t < sz; ++t) hit |= pp[t] == m;
    if (hit) c.ends.push_back(v);
    off[v] = pool_n;
    lenp[v] = sz;
    pool_n += sz;
    mass += sz;
  }
  c.mass = mass;
  c.pool.resize(pool_n);
  return c;
}

}  // namespace

const char* algo_name(MatchAlgo a) {
  switch (a) {
    case MatchAlgo::baseline: return "baseline";
    case MatchAlgo::w_param: return "w";
    case MatchAlgo::s_k: return "sk";
    case MatchAlgo::t_k: return "tk";
    case MatchAlgo::st_k: return "stk";
  }
  return "?";
}

MatchReport match_baseline(const LabeledDag& dag, const PatternIndex& idx) {
  const Digraph& g = dag.g;
  check_labels(g, idx);
  const int m = idx.m;
  const int W = (m + 64) >> 6;  // bits 0..m
  std::vector<uint64_t> mask(static_cast<size_t>(idx.sigma) * W, 0);
  for (int i = 1; i <= m; ++i)
    mask[static_cast<size_t>(idx.at(i)) * W + (i >> 6)] |= uint64_t(1)
                                                           << (i & 63);
  std::vector<uint64_t> bits(static_cast<size_t>(g.n) * W, 0);
  std::vector<uint64_t> acc(W);
  MatchReport r;
  r.algorithm = MatchAlgo::baseline;
  int64_t mass = 0;
  for (int v : dag.topo) {
    uint64_t* cur = bits.data() + static_cast<size_t>(v) * W;
    std::fill(acc.begin(), acc.end(), 0);
    for (int u : g.in_adj[v]) {
      const uint64_t* bu = bits.data() + static_cast<size_t>(u) * W;
      for (int w = 0; w < W; ++w) acc[w] |= bu[w];
    }
    acc[0] |= 1;  // the empty prefix is always live
    const uint64_t* mrow = mask.data() + static_cast<size_t>(g.labels[v]) * W;
    for (int w = W - 1; w > 0; --w)
      cur[w] = ((acc[w] << 1) | (acc[w - 1] >> 63)) & mrow[w];
    cur[0] = ((acc[0] << 1) & mrow[0]) | 1;
    if ((cur[m >> 6] >> (m & 63)) & 1) r.end_vertices.push_back(v);
    for (int w = 0; w < W; ++w) mass += std::popcount(cur[w]);
  }
  r.found = !r.end_vertices.empty();
  std::sort(r.end_vertices.begin(), r.end_vertices.end());
  r.stats.vertices = g.n;
  r.stats.pi_mass = mass;
  return r;
}

std::vector<PISet> compute_pi_sets(const LabeledDag& dag,
                                   const PatternIndex& idx, MergeKind kind) {
  const Digraph& g = dag.g;
  check_labels(g, idx);
  std::vector<PISet> out(g.n);
  std::vector<PISet> ins;
  for (int v : dag.topo) {
    ins.clear();
    for (int u : g.in_adj[v]) ins.push_back(out[u]);
    switch (kind) {
      case MergeKind::quadratic:
        out[v] = merge_quadratic(idx, ins, g.labels[v]);
        break;
      case MergeKind::incremental:
        out[v] = merge_incremental(idx, ins, g.labels[v]);
        break;
      case MergeKind::sorted:
        out[v] = merge_sorted(idx, ins, g.labels[v]);
        break;
      case MergeKind::linear:
        out[v] = merge_linear(idx, ins, g.labels[v]);
        break;
    }
  }
  return out;
}

MatchReport match_w_param(const LabeledDag& dag, const PatternIndex& idx) {
  PiCore c = run_pi_core(dag, idx, std::nullopt);
  MatchReport r;
  r.algorithm = MatchAlgo::w_param;
  r.params.w = static_cast<uint64_t>(idx.leaves);
  r.found = !c.ends.empty();
  r.end_vertices = std::move(c.ends);
  std::sort(r.end_vertices.begin(), r.end_vertices.end());
  r.stats.vertices = dag.g.n;
  r.stats.pi_mass = c.mass;
  return r;
}

MatchReport match_sk(const LabeledDag& dag, const PatternIndex& idx,
                     uint64_t k) {
  PiCore c = run_pi_core(dag, idx, k);
  MatchReport r;
  r.algorithm = MatchAlgo::s_k;
  r.params.k_s = k;
  r.found = !c.ends.empty();
  r.end_vertices = std::move(c.ends);
  std::sort(r.end_vertices.begin(), r.end_vertices.end());
  r.stats.vertices = dag.g.n;
  r.stats.pi_mass = c.mass;
  return r;
}

MatchReport match_tk(const LabeledDag& dag, const PatternIndex& idx_rev,
                     uint64_t k) {
  auto rdag = make_labeled_dag(reverse(dag.g));
  PiCore c = run_pi_core(*rdag, idx_rev, k);
  MatchReport r;
  r.algorithm = MatchAlgo::t_k;
  r.params.k_t = k;
  r.found = !c.ends.empty();
  r.end_vertices = std::move(c.ends);  // occurrence starts in the input graph
  std::sort(r.end_vertices.begin(), r.end_vertices.end());
  r.stats.vertices = dag.g.n;
  r.stats.pi_mass = c.mass;
  return r;
}

PSTable build_ps_table(const PatternIndex& idx, int max_m) {
  if (idx.m > max_m)
    fail(Errc::ps_limit, "pattern too long for the prefix-suffix table");
  const int m = idx.m;
  PSTable t;
  t.m = m;
  t.words_per_row = (m + 64) >> 6;
  t.bits.assign(static_cast<size_t>(m + 1) * t.words_per_row, 0);
  auto set = [&](int i, int j) {
    t.bits[static_cast<size_t>(i) * t.words_per_row + (j >> 6)] |= uint64_t(1)
                                                                   << (j & 63);
  };
  // ps(i, j) = (i + j == m) or ps(i, fail_rev[j]) or ps(fail[i], j); both
  // referenced cells are already filled when (i, j) is visited.
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      bool val = i + j == m;
      if (!val && t.at(i, idx.fail_rev[j])) val = true;
      if (!val && t.at(idx.fail[i], j)) val = true;
      if (val) set(i, j);
    }
  }
  return t;
}

bool cross_edge_match(const PISet& pi_u, const PISet& si_v, const PSTable& ps) {
  for (int i : pi_u.items) {
    if (i < 1) continue;
    for (int j : si_v.items)
      if (j >= 1 && ps.at(i, j)) return true;
  }
  return false;
}

MatchReport match_stk(const LabeledDag& dag, const PatternIndex& idx,
                      const PatternIndex& idx_rev, uint64_t k, int ps_max) {
  const Digraph& g = dag.g;
  check_labels(g, idx);
  MatchReport r;
  r.algorithm = MatchAlgo::st_k;
  r.params.k_st = k;
  const Partition part = st_partition(dag, k);  // throws when not in class
  const auto ind1 = induced_subgraph(g, part.v1);
  const auto ind2 = induced_subgraph(g, part.v2);
  const auto d1 = make_labeled_dag(ind1.graph);
  PiCore c1 = run_pi_core(*d1, idx, k);
  auto d2 = make_labeled_dag(reverse(ind2.graph));
  PiCore c2 = run_pi_core(*d2, idx_rev, k);
  for (int v : c1.ends) r.end_vertices.push_back(ind1.old_of_new[v]);
  for (int v : c2.ends) r.end_vertices.push_back(ind2.old_of_new[v]);
  std::sort(r.end_vertices.begin(), r.end_vertices.end());
  const PSTable ps = build_ps_table(idx, ps_max);
  for (const auto& [u, v] : g.edges) {
    const int nu = ind1.new_of_old[u];
    const int nv = ind2.new_of_old[v];
    if (nu < 0 || nv < 0) continue;
    std::span<const int> pu(c1.pool.data() + c1.off[nu],
                            static_cast<size_t>(c1.len[nu]));
    std::span<const int> sv(c2.pool.data() + c2.off[nv],
                            static_cast<size_t>(c2.len[nv]));
    bool hit = false;
    for (int i : pu) {
      if (i < 1) continue;
      for (int j : sv) {
        if (j >= 1 && ps.at(i, j)) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) r.witness_edges.emplace_back(u, v);
  }
  r.found = !r.end_vertices.empty() || !r.witness_edges.empty();
  r.stats.vertices = g.n;
  r.stats.pi_mass = c1.mass + c2.mass;
  return r;
}

MatchReport match_auto(const LabeledDag& dag, const PatternIndex& idx,
                       const PatternIndex& idx_rev) {
  constexpr uint64_t kAutoCap = uint64_t(1) << 50;
  constexpr int kPsMax = 65536;
  const ClassMinK cmk = class_min_k(dag, kAutoCap);
  const double V = dag.g.n;
  const double E = static_cast<double>(dag.g.edges.size());
  const double M = idx.m;
  const double wv = idx.leaves;
  const double inf = std::numeric_limits<double>::infinity();
  auto val = [&](const SatValue& s) -> double {
    return s.saturated ? inf : static_cast<double>(s.value);
  };
  const double c_sk = cmk.k_s.saturated ? inf : V * val(cmk.k_s) + E;
  const double c_tk = cmk.k_t.saturated ? inf : V * val(cmk.k_t) + E;
  const double c_stk = (cmk.k_st.saturated || idx.m > kPsMax)
                           ? inf
                           : (V + E) * val(cmk.k_st) * val(cmk.k_st) + M * M;
  const double c_w = (V + E) * wv;
  const double c_base = M * E;
  const std::pair<MatchAlgo, double> order[] = {
      {MatchAlgo::s_k, c_sk},     {MatchAlgo::t_k, c_tk},
      {MatchAlgo::st_k, c_stk},   {MatchAlgo::w_param, c_w},
      {MatchAlgo::baseline, c_base}};
  MatchAlgo pick = MatchAlgo::baseline;
  double best = inf;
  for (const auto& [a, cost] : order) {
    if (cost < best) {  // strict: ties keep the earlier entry
      best = cost;
      pick = a;
    }
  }
  MatchReport r;
  switch (pick) {
    case MatchAlgo::s_k: r = match_sk(dag, idx, cmk.k_s.value); break;
    case MatchAlgo::t_k: r = match_tk(dag, idx_rev, cmk.k_t.value); break;
    case MatchAlgo::st_k: r = match_stk(dag, idx, idx_rev, cmk.k_st.value); break;
    case MatchAlgo::w_param: r = match_w_param(dag, idx); break;
    case MatchAlgo::baseline: r = match_baseline(dag, idx); break;
  }
  r.params.w = static_cast<uint64_t>(idx.leaves);
  if (!cmk.k_s.saturated) r.params.k_s = cmk.k_s.value;
  if (!cmk.k_t.saturated) r.params.k_t = cmk.k_t.value;
  if (!cmk.k_st.saturated) r.params.k_st = cmk.k_st.value;
  return r;
}

}  // namespace dagmatch
