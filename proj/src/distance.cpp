#include "dagmatch/distance.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "dagmatch/funnel.hpp"

namespace dagmatch {

namespace {

// Working copy during the search: every current vertex remembers the set of
// original vertices merged into it, every current edge its original edge.
struct Work {
  Digraph g;
  std::vector<std::vector<int>> blobs;
  std::vector<std::pair<int, int>> eorig;
};

Digraph raw_graph(int n, std::vector<std::pair<int, int>> edges,
                  const Alphabet& ab) {
  Digraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.out_adj.assign(n, {});
  g.in_adj.assign(n, {});
  g.labels.assign(n, 0);
  g.alphabet = ab;
  for (const auto& [u, v] : g.edges) {
    g.out_adj[u].push_back(v);
    g.in_adj[v].push_back(u);
  }
  return g;
}

Work initial_work(const Digraph& g) {
  Work w;
  w.g = g;
  w.blobs.resize(g.n);
  for (int v = 0; v < g.n; ++v) w.blobs[v] = {v};
  w.eorig = g.edges;
  return w;
}

Work delete_vertex(const Work& w, int dv) {
  const int n = w.g.n;
  std::vector<int> nmap(n, -1);
  int c = 0;
  for (int x = 0; x < n; ++x)
    if (x != dv) nmap[x] = c++;
  Work r;
  r.blobs.reserve(c);
  for (int x = 0; x < n; ++x)
    if (x != dv) r.blobs.push_back(w.blobs[x]);
  std::vector<std::pair<int, int>> edges;
  for (size_t e = 0; e < w.g.edges.size(); ++e) {
    const auto& [u, v] = w.g.edges[e];
    if (u == dv || v == dv) continue;
    edges.emplace_back(nmap[u], nmap[v]);
    r.eorig.push_back(w.eorig[e]);
  }
  r.g = raw_graph(c, std::move(edges), w.g.alphabet);
  return r;
}

Work delete_edge(const Work& w, size_t de) {
  Work r;
  r.blobs = w.blobs;
  std::vector<std::pair<int, int>> edges;
  for (size_t e = 0; e < w.g.edges.size(); ++e) {
    if (e == de) continue;
    edges.push_back(w.g.edges[e]);
    r.eorig.push_back(w.eorig[e]);
  }
  r.g = raw_graph(w.g.n, std::move(edges), w.g.alphabet);
  return r;
}

struct Contracted {
  Work w;
  std::vector<int> nmap;  // old current id -> new current id
};

// Merges `group` (>= 2 vertices) into one vertex at group[0]'s position.
// Internal edges vanish; parallels collapse onto the first original edge.
Contracted contract_group(const Work& w, const std::vector<int>& group) {
  const int n = w.g.n;
  std::vector<char> ing(n, 0);
  for (int x : group) ing[x] = 1;
  const int keep = group[0];
  Contracted r;
  r.nmap.assign(n, -1);
  int c = 0;
  for (int x = 0; x < n; ++x)
    if (!ing[x] || x == keep) r.nmap[x] = c++;
  for (int x : group) r.nmap[x] = r.nmap[keep];
  r.w.blobs.assign(c, {});
  for (int x = 0; x < n; ++x) {
    auto& b = r.w.blobs[r.nmap[x]];
    if (!ing[x] || x == keep)
      b = w.blobs[x];
  }
  auto& merged = r.w.blobs[r.nmap[keep]];
  for (int x : group)
    if (x != keep)
      merged.insert(merged.end(), w.blobs[x].begin(), w.blobs[x].end());
  std::sort(merged.begin(), merged.end());
  std::vector<std::pair<int, int>> edges;
  std::unordered_set<int64_t> seen;
  for (size_t e = 0; e < w.g.edges.size(); ++e) {
    const auto& [u, v] = w.g.edges[e];
    const int nu = r.nmap[u], nv = r.nmap[v];
    if (nu == nv) continue;
    if (seen.insert(static_cast<int64_t>(nu) * c + nv).second) {
      edges.emplace_back(nu, nv);
      r.w.eorig.push_back(w.eorig[e]);
    }
  }
  r.w.g = raw_graph(c, std::move(edges), w.g.alphabet);
  return r;
}

// Deterministic cycle detection: DFS from roots in index order, children in
// adjacency order; returns the cycle's vertices in path order.
std::optional<std::vector<int>> find_cycle(const Digraph& g) {
  std::vector<int> color(g.n, 0), parent(g.n, -1);
  std::vector<std::pair<int, size_t>> stack;
  for (int s = 0; s < g.n; ++s) {
    if (color[s] != 0) continue;
    color[s] = 1;
    stack.emplace_back(s, 0);
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < g.out_adj[v].size()) {
        const int w = g.out_adj[v][i++];
        if (color[w] == 1) {
          std::vector<int> cyc;
          for (int x = v; x != w; x = parent[x]) cyc.push_back(x);
          cyc.push_back(w);
          std::reverse(cyc.begin(), cyc.end());
          return cyc;
        }
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

size_t edge_index(const Digraph& g, int u, int v) {
  for (size_t e = 0; e < g.edges.size(); ++e)
    if (g.edges[e].first == u && g.edges[e].second == v) return e;
  return SIZE_MAX;
}

struct Ctx {
  const Digraph* orig = nullptr;
  DeletionMode mode = DeletionMode::vertex;
  int64_t nodes = 0;
  int max_branch = 0;
  std::vector<int> dvs;                     // original vertices deleted
  std::vector<std::pair<int, int>> des;     // original edges deleted
};

// The contracted view can hide structure that only the original graph shows
// (e.g. a cycle collapsed into one blob), so acceptance is always validated
// against the original minus the recorded deletions.
bool verify_final(const Ctx& ctx) {
  const Digraph& g = *ctx.orig;
  if (ctx.mode == DeletionMode::vertex) {
    std::vector<char> del(g.n, 0);
    for (int v : ctx.dvs) del[v] = 1;
    std::vector<int> keep;
    for (int v = 0; v < g.n; ++v)
      if (!del[v]) keep.push_back(v);
    return is_funnel_graph(induced_subgraph(g, keep).graph);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.edges)
    if (std::find(ctx.des.begin(), ctx.des.end(), e) == ctx.des.end())
      edges.push_back(e);
  return is_funnel_graph(raw_graph(g.n, std::move(edges), g.alphabet));
}

template <typename T>
void dedupe_keep_order(std::vector<T>& xs) {
  std::vector<T> out;
  for (const T& x : xs)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  xs = std::move(out);
}

bool solve(Ctx& ctx, const Work& w, int budget) {
  ++ctx.nodes;
  const auto fp = find_minimal_forbidden_path(w.g);
  if (fp) {
    if (budget == 0) return false;
    const std::vector<int>& p = *fp;
    if (ctx.mode == DeletionMode::vertex) {
      // Deleting an interior vertex is dominated by deleting the first one
      // (interiors carry no edges besides the path's own), so only the two
      // endpoints and their outside neighbors need branches. Every branch
      // deletes exactly one vertex; deleting several path vertices for one
      // budget unit can claim a distance the graph does not have.
      std::vector<int> cands{p.front()};
      if (p.size() > 1) cands.push_back(p.back());
      std::vector<int> ins = w.g.in_adj[p.front()];
      std::sort(ins.begin(), ins.end());
      for (size_t i = 0; i < ins.size() && i < 2; ++i) cands.push_back(ins[i]);
      std::vector<int> outs = w.g.out_adj[p.back()];
      std::sort(outs.begin(), outs.end());
      for (size_t i = 0; i < outs.size() && i < 2; ++i)
        cands.push_back(outs[i]);
      dedupe_keep_order(cands);
      ctx.max_branch = std::max(ctx.max_branch, static_cast<int>(cands.size()));
      for (int cv : cands) {
        const size_t mark = ctx.dvs.size();
        ctx.dvs.insert(ctx.dvs.end(), w.blobs[cv].begin(), w.blobs[cv].end());
        Work next = delete_vertex(w, cv);
        if (solve(ctx, next, budget - 1)) return true;
        ctx.dvs.resize(mark);
      }
      return false;
    }
    // Edge mode: collapse the path to a single surviving edge first.
    Work base;
    int s, h;
    std::vector<size_t> ecands;
    if (p.size() == 1) {
      base = w;
      s = h = p[0];  // no path edge; branch on the degree-reducing edges
    } else if (p.size() == 2) {
      base = w;
      s = p[0];
      h = p[1];
      ecands.push_back(edge_index(base.g, s, h));
    } else {
      Contracted c = contract_group(w, {p.begin() + 1, p.end()});
      base = std::move(c.w);
      s = c.nmap[p[0]];
      h = c.nmap[p[1]];
      ecands.push_back(edge_index(base.g, s, h));
    }
    std::vector<size_t> ins, outs;
    for (size_t e = 0; e < base.g.edges.size(); ++e) {
      if (base.g.edges[e].second == s && ins.size() < 2) ins.push_back(e);
      if (base.g.edges[e].first == h && outs.size() < 2) outs.push_back(e);
    }
    ecands.insert(ecands.end(), ins.begin(), ins.end());
    ecands.insert(ecands.end(), outs.begin(), outs.end());
    dedupe_keep_order(ecands);
    ctx.max_branch = std::max(ctx.max_branch, static_cast<int>(ecands.size()));
    for (size_t e : ecands) {
      ctx.des.push_back(base.eorig[e]);
      Work next = delete_edge(base, e);
      if (solve(ctx, next, budget - 1)) return true;
      ctx.des.pop_back();
    }
    return false;
  }
  // Forbidden-path-free: any remaining cycles are broken one deletion each,
  // then the accumulated answer is checked against the original graph.
  Work cur = w;
  int b = budget;
  const size_t vmark = ctx.dvs.size(), emark = ctx.des.size();
  while (auto cyc = find_cycle(cur.g)) {
    if (b == 0) {
      ctx.dvs.resize(vmark);
      ctx.des.resize(emark);
      return false;
    }
    --b;
    if (ctx.mode == DeletionMode::vertex) {
      const int cv = *std::min_element(cyc->begin(), cyc->end());
      ctx.dvs.insert(ctx.dvs.end(), cur.blobs[cv].begin(),
                     cur.blobs[cv].end());
      cur = delete_vertex(cur, cv);
    } else {
      size_t best = SIZE_MAX;
      for (size_t i = 0; i < cyc->size(); ++i) {
        const int a = (*cyc)[i];
        const int c2 = (*cyc)[(i + 1) % cyc->size()];
        best = std::min(best, edge_index(cur.g, a, c2));
      }
      ctx.des.push_back(cur.eorig[best]);
      cur = delete_edge(cur, best);
    }
  }
  if (verify_final(ctx)) return true;
  ctx.dvs.resize(vmark);
  ctx.des.resize(emark);
  return false;
}

}  // namespace

std::optional<DistanceResult> deletion_distance(const Digraph& g,
                                                DeletionMode mode, int max_d) {
  Ctx ctx;
  ctx.orig = &g;
  ctx.mode = mode;
  const Work w0 = initial_work(g);
  for (int d = 0; d <= max_d; ++d) {
    ctx.dvs.clear();
    ctx.des.clear();
    if (solve(ctx, w0, d)) {
      DistanceResult r;
      r.mode = mode;
      r.d = d;
      std::sort(ctx.dvs.begin(), ctx.dvs.end());
      r.deleted_vertices = std::move(ctx.dvs);
      std::sort(ctx.des.begin(), ctx.des.end());
      r.deleted_edges = std::move(ctx.des);
      r.nodes_explored = ctx.nodes;
      r.max_branch = ctx.max_branch;
      return r;
    }
  }
  return std::nullopt;
}

std::optional<DistanceResult> brute_force_distance(const Digraph& g,
                                                   DeletionMode mode,
                                                   int max_d) {
  const int pool = mode == DeletionMode::vertex
                       ? g.n
                       : static_cast<int>(g.edges.size());
  int64_t nodes = 0;
  for (int d = 0; d <= max_d; ++d) {
    if (d > pool) break;
    std::vector<int> comb(d);
    for (int i = 0; i < d; ++i) comb[i] = i;
    while (true) {
      ++nodes;
      bool ok;
      if (mode == DeletionMode::vertex) {
        std::vector<char> del(g.n, 0);
        for (int i : comb) del[i] = 1;
        std::vector<int> keep;
        for (int v = 0; v < g.n; ++v)
          if (!del[v]) keep.push_back(v);
        ok = is_funnel_graph(induced_subgraph(g, keep).graph);
      } else {
        std::vector<char> del(g.edges.size(), 0);
        for (int i : comb) del[i] = 1;
        std::vector<std::pair<int, int>> edges;
        for (size_t e = 0; e < g.edges.size(); ++e)
          if (!del[e]) edges.push_back(g.edges[e]);
        ok = is_funnel_graph(raw_graph(g.n, std::move(edges), g.alphabet));
      }
      if (ok) {
        DistanceResult r;
        r.mode = mode;
        r.d = d;
        for (int i : comb) {
          if (mode == DeletionMode::vertex)
            r.deleted_vertices.push_back(i);
          else
            r.deleted_edges.push_back(g.edges[i]);
        }
        r.nodes_explored = nodes;
        r.max_branch = 0;
        return r;
      }
      int i = d - 1;
      while (i >= 0 && comb[i] == pool - d + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace dagmatch
