#include "dagmatch/funnel.hpp"

#include <algorithm>
#include <queue>

#include "dagmatch/error.hpp"

namespace dagmatch {

namespace {

constexpr uint64_t kExactMax = (uint64_t(1) << 63) - 1;

uint64_t clamp_limit(std::optional<uint64_t> cap) {
  if (!cap) return kExactMax;
  return *cap >= kExactMax ? kExactMax : *cap + 1;
}

bool unit(const Digraph& g, int v) {
  return g.in_degree(v) == 1 && g.out_degree(v) == 1;
}

}  // namespace

uint64_t FunnelProfile::mu_edge(int u, int v) const {
  const uint64_t a = mu_s[u], b = mu_t[v];
  if (a == 0 || b == 0) return 0;
  const uint64_t lim = clamp_limit(cap);
  if (a > lim / b) {
    if (!cap) fail(Errc::overflow, "edge path count exceeds the 64-bit range");
    return lim;
  }
  return a * b;
}

FunnelProfile path_counts(const LabeledDag& dag, std::optional<uint64_t> cap) {
  const Digraph& g = dag.g;
  FunnelProfile p;
  p.cap = cap;
  const uint64_t lim = clamp_limit(cap);
  auto add = [&](uint64_t a, uint64_t b) -> uint64_t {
    if (a > lim - b) {
      if (!cap) fail(Errc::overflow, "path count exceeds the 64-bit range");
      return lim;
    }
    return a + b;
  };
  p.mu_s.assign(g.n, 0);
  for (int v : dag.topo) {
    if (g.in_degree(v) == 0) {
      p.mu_s[v] = 1;
    } else {
      for (int u : g.in_adj[v]) p.mu_s[v] = add(p.mu_s[v], p.mu_s[u]);
    }
  }
  p.mu_t.assign(g.n, 0);
  for (auto it = dag.topo.rbegin(); it != dag.topo.rend(); ++it) {
    const int v = *it;
    if (g.out_degree(v) == 0) {
      p.mu_t[v] = 1;
    } else {
      for (int w : g.out_adj[v]) p.mu_t[v] = add(p.mu_t[v], p.mu_t[w]);
    }
  }
  return p;
}

std::optional<std::vector<int>> find_minimal_forbidden_path(const Digraph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.in_degree(v) > 1 && g.out_degree(v) > 1)
      return std::vector<int>{v};
  for (int u = 0; u < g.n; ++u) {
    if (g.in_degree(u) <= 1) continue;
    for (int v : g.out_adj[u])
      if (g.out_degree(v) > 1) return std::vector<int>{u, v};
  }
  // Remaining candidates have >= 1 interior vertex; interiors are unit
  // (indeg = outdeg = 1), so each lies on a maximal unit chain whose two
  // end-attachments decide whether the chain yields a forbidden path.
  std::vector<char> seen(g.n, 0);
  for (int x = 0; x < g.n; ++x) {
    if (seen[x] || !unit(g, x)) continue;
    seen[x] = 1;
    int head = x;
    bool cyclic = false;
    while (true) {
      const int p = g.in_adj[head][0];
      if (p == x) {  // all-unit cycle; nothing forbidden lives on it
        cyclic = true;
        break;
      }
      if (!unit(g, p)) break;
      head = p;
      seen[head] = 1;
    }
    if (cyclic) continue;
    int tail = x;
    while (true) {
      const int q = g.out_adj[tail][0];
      if (!unit(g, q)) break;
      tail = q;
      seen[tail] = 1;
    }
    const int s = g.in_adj[head][0];
    const int t = g.out_adj[tail][0];
    if (g.in_degree(s) > 1 && g.out_degree(t) > 1) {
      std::vector<int> path{s};
      for (int v = head; v != t; v = g.out_adj[v][0]) path.push_back(v);
      path.push_back(t);
      return path;
    }
  }
  return std::nullopt;
}

std::optional<Partition> is_funnel_bfs(const LabeledDag& dag) {
  const Digraph& g = dag.g;
  std::vector<char> visited(g.n, 0);
  std::queue<int> q;
  for (int v : dag.sources) {
    visited[v] = 1;
    q.push(v);
  }
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : g.out_adj[u]) {
      if (!visited[w] && g.in_degree(w) <= 1) {
        visited[w] = 1;
        q.push(w);
      }
    }
  }
  for (const auto& [u, v] : g.edges)
    if (!visited[u] && visited[v]) return std::nullopt;
  for (int v = 0; v < g.n; ++v)
    if (!visited[v] && g.out_degree(v) > 1) return std::nullopt;
  Partition part;
  part.certified_k = 1;
  for (int v = 0; v < g.n; ++v)
    (visited[v] ? part.v1 : part.v2).push_back(v);
  return part;
}

std::optional<std::vector<int>> k_shared_witness(const LabeledDag& dag,
                                                 uint64_t k) {
  const Digraph& g = dag.g;
  const FunnelProfile prof = path_counts(dag, k);
  auto shared = [&](int u, int v) { return prof.saturated(prof.mu_edge(u, v)); };
  // reach[v]: some all-shared path of length >= 1 leads from a source to v.
  std::vector<char> reach(g.n, 0);
  std::vector<int> pred(g.n, -1);
  for (int v : dag.topo) {
    for (int u : g.in_adj[v]) {
      if (shared(u, v) && (g.in_degree(u) == 0 || reach[u])) {
        reach[v] = 1;
        pred[v] = u;
        break;
      }
    }
  }
  for (int t : dag.sinks) {
    if (!reach[t]) continue;
    std::vector<int> path{t};
    int cur = t;
    while (reach[cur]) {
      cur = pred[cur];
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }
  return std::nullopt;
}

bool is_k_funnel(const LabeledDag& dag, uint64_t k) {
  return !k_shared_witness(dag, k).has_value();
}

uint64_t min_k_funnel_search(const LabeledDag& dag) {
  if (is_k_funnel(dag, 1)) return 1;
  uint64_t lo = 1, hi = 2;
  while (!is_k_funnel(dag, hi)) {
    lo = hi;
    if (hi > (uint64_t(1) << 61))
      fail(Errc::overflow, "minimum k exceeds the search range");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (is_k_funnel(dag, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

uint64_t min_k_funnel_widest(const LabeledDag& dag) {
  const Digraph& g = dag.g;
  const FunnelProfile prof = path_counts(dag);
  // best[v] = widest bottleneck over all-shared-candidate paths ending at v;
  // edge weight mu(e), path value = min over its edges, answer = max at sinks.
  std::vector<uint64_t> best(g.n, 0);
  for (int v : dag.topo) {
    for (int w : g.out_adj[v]) {
      uint64_t we = prof.mu_edge(v, w);
      if (g.in_degree(v) > 0) we = std::min(we, best[v]);
      best[w] = std::max(best[w], we);
    }
  }
  uint64_t ans = 1;
  for (int t : dag.sinks)
    if (g.in_degree(t) > 0) ans = std::max(ans, best[t]);
  return ans;
}

ClassMinK class_min_k(const LabeledDag& dag, std::optional<uint64_t> cap) {
  const FunnelProfile prof = path_counts(dag, cap);
  ClassMinK r;
  uint64_t ks = 0, kt = 0, kst = 0;
  for (int v = 0; v < dag.g.n; ++v) {
    ks = std::max(ks, prof.mu_s[v]);
    kt = std::max(kt, prof.mu_t[v]);
    kst = std::max(kst, std::min(prof.mu_s[v], prof.mu_t[v]));
  }
  auto pack = [&](uint64_t raw) {
    if (prof.saturated(raw)) return SatValue{*cap, true};
    return SatValue{raw, false};
  };
  r.k_s = pack(ks);
  r.k_t = pack(kt);
  r.k_st = pack(kst);
  return r;
}

Partition st_partition(const LabeledDag& dag, uint64_t k) {
  const Digraph& g = dag.g;
  const FunnelProfile prof = path_counts(dag, k);
  Partition part;
  part.certified_k = k;
  std::vector<char> in_v1(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    if (prof.mu_s[v] <= k) {
      in_v1[v] = 1;
      part.v1.push_back(v);
    } else {
      part.v2.push_back(v);
    }
  }
  for (const auto& [u, v] : g.edges)
    if (!in_v1[u] && in_v1[v])
      fail(Errc::not_in_class, "edge re-enters the bounded-source side");
  const auto ind1 = induced_subgraph(g, part.v1);
  const auto ind2 = induced_subgraph(g, part.v2);
  const auto d1 = make_labeled_dag(ind1.graph);
  const auto d2 = make_labeled_dag(ind2.graph);
  const FunnelProfile p1 = path_counts(*d1, k);
  for (uint64_t x : p1.mu_s)
    if (x > k) fail(Errc::not_in_class, "bounded-source side exceeds k");
  const FunnelProfile p2 = path_counts(*d2, k);
  for (uint64_t x : p2.mu_t)
    if (x > k) fail(Errc::not_in_class, "sink side exceeds k");
  return part;
}

ContainmentRecord containment_check(const LabeledDag& dag, uint64_t k) {
  ContainmentRecord r;
  r.k = k;
  const ClassMinK cmk = class_min_k(dag, k);
  r.in_sk = !cmk.k_s.saturated;
  r.in_tk = !cmk.k_t.saturated;
  r.k_funnel = is_k_funnel(dag, k);
  try {
    st_partition(dag, k);
    r.in_stk = true;
  } catch (const Error& e) {
    if (e.code() != Errc::not_in_class) throw;
    r.in_stk = false;
  }
  r.chain_holds = (!(r.in_sk || r.in_tk) || r.k_funnel) &&
                  (!r.k_funnel || r.in_stk);
  return r;
}

bool is_funnel_graph(const Digraph& g) {
  return topological_order(g).has_value() &&
         !find_minimal_forbidden_path(g).has_value();
}

}  // namespace dagmatch
