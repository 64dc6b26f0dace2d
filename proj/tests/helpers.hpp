#pragma once

// Brute-force reference implementations. Everything here works by direct
// definition (string comparison, path enumeration) so it shares no machinery
// with the library code it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dagmatch/graph.hpp"
#include "dagmatch/pattern.hpp"

namespace oracle {

using dagmatch::Digraph;

// S[1..i] equals the last i characters of S[1..j]; i <= j, i = j included.
inline bool is_border(const std::string& s, int i, int j) {
  return s.compare(0, i, s, j - i, i) == 0;
}

inline std::vector<int> brute_failure(const std::string& s) {
  const int m = static_cast<int>(s.size());
  std::vector<int> f(m + 1, 0);
  for (int i = 1; i <= m; ++i)
    for (int l = i - 1; l >= 1; --l)
      if (is_border(s, l, i)) {
        f[i] = l;
        break;
      }
  return f;
}

// Longest l with S[1..l] a suffix of S[1..i] plus the character c.
inline int brute_automaton_entry(const std::string& s, int i, char c) {
  const int m = static_cast<int>(s.size());
  const std::string t = s.substr(0, i) + c;
  for (int l = std::min(m, i + 1); l >= 1; --l)
    if (t.compare(t.size() - l, l, s, 0, l) == 0) return l;
  return 0;
}

inline std::string label_chars(const Digraph& g) {
  std::string s(g.n, ' ');
  for (int v = 0; v < g.n; ++v)
    s[v] = static_cast<char>(g.alphabet.symbol(g.labels[v]));
  return s;
}

// All prefix lengths spelled by some path ending at each vertex, plus 0.
// Reachability over (vertex, matched length) pairs.
inline std::vector<std::set<int>> brute_prefix_sets(const Digraph& g,
                                                    const std::string& pat) {
  const std::string lab = label_chars(g);
  const int m = static_cast<int>(pat.size());
  std::vector<std::vector<char>> vis(g.n, std::vector<char>(m + 1, 0));
  std::vector<std::pair<int, int>> stack;
  for (int v = 0; v < g.n; ++v)
    if (lab[v] == pat[0]) {
      vis[v][1] = 1;
      stack.emplace_back(v, 1);
    }
  while (!stack.empty()) {
    const auto [u, l] = stack.back();
    stack.pop_back();
    if (l == m) continue;
    for (int w : g.out_adj[u])
      if (lab[w] == pat[l] && !vis[w][l + 1]) {
        vis[w][l + 1] = 1;
        stack.emplace_back(w, l + 1);
      }
  }
  std::vector<std::set<int>> B(g.n);
  for (int v = 0; v < g.n; ++v) {
    B[v].insert(0);
    for (int l = 1; l <= m; ++l)
      if (vis[v][l]) B[v].insert(l);
  }
  return B;
}

// Maximal elements of a border-closed set under the border order.
inline std::set<int> maximal_antichain(const std::string& pat,
                                       const std::set<int>& B) {
  std::set<int> out;
  for (int i : B) {
    bool dominated = false;
    for (int j : B)
      if (j > i && is_border(pat, i, j)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(i);
  }
  return out;
}

inline std::vector<std::vector<int>> all_st_paths(const Digraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto go = [&](auto&& self, int v) -> void {
    cur.push_back(v);
    if (g.out_degree(v) == 0)
      out.push_back(cur);
    else
      for (int w : g.out_adj[v]) self(self, w);
    cur.pop_back();
  };
  for (int v = 0; v < g.n; ++v)
    if (g.in_degree(v) == 0) go(go, v);
  return out;
}

// Funnel by definition: acyclic, and every source-to-sink path splits into a
// merging-free prefix (indeg <= 1) followed by a forking-free suffix.
inline bool brute_is_funnel(const Digraph& g) {
  if (!dagmatch::topological_order(g)) return false;
  for (const auto& p : all_st_paths(g)) {
    const int len = static_cast<int>(p.size());
    bool ok = false;
    for (int c = 0; c <= len && !ok; ++c) {
      bool good = true;
      for (int i = 0; i < c && good; ++i)
        if (g.in_degree(p[i]) > 1) good = false;
      for (int i = c; i < len && good; ++i)
        if (g.out_degree(p[i]) > 1) good = false;
      ok = good;
    }
    if (!ok) return false;
  }
  return true;
}

// A forbidden path exists iff some vertex with extra in-edges reaches (or
// is) a vertex with extra out-edges. Reachability by plain DFS.
inline bool brute_has_forbidden_path(const Digraph& g) {
  for (int u = 0; u < g.n; ++u) {
    if (g.in_degree(u) <= 1) continue;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (g.out_degree(v) > 1) return true;
      for (int w : g.out_adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return false;
}

// Checks a concrete path against the definition: consecutive edges present,
// merging head, forking tail, and no proper subpath forbidden (which for a
// path means no interior merge and no fork before the last vertex).
inline bool is_minimal_forbidden_path(const Digraph& g,
                                      const std::vector<int>& p) {
  if (p.empty()) return false;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.has_edge(p[i], p[i + 1])) return false;
  if (g.in_degree(p.front()) <= 1 || g.out_degree(p.back()) <= 1) return false;
  for (size_t i = 1; i < p.size(); ++i)
    if (g.in_degree(p[i]) > 1) return false;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (g.out_degree(p[i]) > 1) return false;
  return true;
}

// Path counts by literal enumeration (every DFS arrival is one path).
inline std::vector<int64_t> brute_mu_s(const Digraph& g) {
  std::vector<int64_t> cnt(g.n, 0);
  auto go = [&](auto&& self, int v) -> void {
    ++cnt[v];
    for (int w : g.out_adj[v]) self(self, w);
  };
  for (int v = 0; v < g.n; ++v)
    if (g.in_degree(v) == 0) go(go, v);
  return cnt;
}

inline std::vector<int64_t> brute_mu_t(const Digraph& g) {
  std::vector<int64_t> cnt(g.n, 0);
  auto go = [&](auto&& self, int v) -> void {
    ++cnt[v];
    for (int w : g.in_adj[v]) self(self, w);
  };
  for (int v = 0; v < g.n; ++v)
    if (g.out_degree(v) == 0) go(go, v);
  return cnt;
}

// Smallest k such that no source-to-sink path uses only edges with
// mu(e) > k; equals the maximum over paths of the minimum edge count.
inline int64_t brute_min_k(const Digraph& g) {
  const auto ms = brute_mu_s(g);
  const auto mt = brute_mu_t(g);
  int64_t ans = 1;
  for (const auto& p : all_st_paths(g)) {
    if (p.size() < 2) continue;
    int64_t bottleneck = INT64_MAX;
    for (size_t i = 0; i + 1 < p.size(); ++i)
      bottleneck = std::min(bottleneck, ms[p[i]] * mt[p[i + 1]]);
    ans = std::max(ans, bottleneck);
  }
  return ans;
}

// Border-or-self masks; bit i' of prefix_mask(i) says S[1..i'] caps S[1..i].
inline uint32_t border_mask(const std::string& s, int i) {
  uint32_t msk = 0;
  for (int l = 1; l <= i; ++l)
    if (is_border(s, l, i)) msk |= uint32_t(1) << l;
  return msk;
}

// True iff a border i' of prefix i and a border j' of the length-j suffix
// (reversed-string prefix) with i' + j' = m exist, both >= 1.
inline bool brute_ps(const std::string& s, int i, int j) {
  const int m = static_cast<int>(s.size());
  std::string rev(s.rbegin(), s.rend());
  const uint32_t pm = border_mask(s, i);
  const uint32_t sm = border_mask(rev, j);
  for (int jp = 1; jp <= j; ++jp)
    if ((sm >> jp) & 1) {
      const int ip = m - jp;
      if (ip >= 1 && ((pm >> ip) & 1)) return true;
    }
  return false;
}

// Random instances for the randomized suites; only test code depends on
// the exact draws, so plain modulus is fine.
inline Digraph random_dag(std::mt19937_64& rng, int n, int max_edges,
                          int sigma) {
  std::vector<std::pair<int, int>> pool;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pool.emplace_back(i, j);
  std::shuffle(pool.begin(), pool.end(), rng);
  const int want = static_cast<int>(
      rng() % (std::min<size_t>(max_edges, pool.size()) + 1));
  std::vector<std::pair<int, int>> edges(pool.begin(), pool.begin() + want);
  std::string chars(n, 'a');
  for (int v = 0; v < n; ++v)
    chars[v] = static_cast<char>('a' + rng() % sigma);
  dagmatch::Alphabet ab = dagmatch::Alphabet::from_symbols(chars);
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v)
    labels[v] = ab.code(static_cast<unsigned char>(chars[v]));
  return dagmatch::make_digraph(n, std::move(edges), std::move(labels), ab);
}

// Arbitrary digraph (cycles allowed, no self-loops) for distance tests.
inline Digraph random_digraph(std::mt19937_64& rng, int n, int max_edges) {
  std::vector<std::pair<int, int>> pool;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pool.emplace_back(i, j);
  std::shuffle(pool.begin(), pool.end(), rng);
  const int want = static_cast<int>(
      rng() % (std::min<size_t>(max_edges, pool.size()) + 1));
  std::vector<std::pair<int, int>> edges(pool.begin(), pool.begin() + want);
  std::string chars(n, 'a');
  dagmatch::Alphabet ab = dagmatch::Alphabet::from_symbols(n ? chars : "a");
  std::vector<int> labels(n, 0);
  return dagmatch::make_digraph(n, std::move(edges), std::move(labels), ab);
}

inline std::string random_pattern(std::mt19937_64& rng, int len, int sigma) {
  std::string s(len, 'a');
  for (char& c : s) c = static_cast<char>('a' + rng() % sigma);
  return s;
}

// Pattern indices over the graph's alphabet extended by the pattern.
struct Indices {
  dagmatch::PatternIndex fwd, rev;
};

inline Indices indices_for(const Digraph& g, const std::string& pattern) {
  dagmatch::Alphabet ab = g.alphabet;
  std::vector<int> codes = ab.encode_extending(pattern);
  Indices ix;
  ix.fwd = dagmatch::build_pattern_index(codes, ab.size());
  std::reverse(codes.begin(), codes.end());
  ix.rev = dagmatch::build_pattern_index(std::move(codes), ab.size());
  return ix;
}

}  // namespace oracle
