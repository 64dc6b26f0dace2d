#include "dagmatch/generate.hpp"

#include <algorithm>
#include <random>

#include "dagmatch/error.hpp"

namespace dagmatch {

namespace {

// rng() % n and the 53-bit unit double keep every draw reproducible from the
// seed alone, independent of distribution implementations.
uint64_t rand_below(std::mt19937_64& rng, uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

double rand_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::invalid_spec, what);
}

std::vector<std::pair<int, int>> structure(GenKind kind, const GenSpec& spec,
                                           int& n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case GenKind::path:
      require(spec.n >= 0, "path size must be >= 0");
      n = spec.n;
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case GenKind::out_tree:
      require(spec.n >= 0, "tree size must be >= 0");
      n = spec.n;
      for (int i = 1; i < n; ++i)
        edges.emplace_back(static_cast<int>(rand_below(rng, i)), i);
      break;
    case GenKind::in_tree:
      require(spec.n >= 0, "tree size must be >= 0");
      n = spec.n;
      for (int i = 1; i < n; ++i)
        edges.emplace_back(i, static_cast<int>(rand_below(rng, i)));
      break;
    case GenKind::diamond:
      n = 4;
      edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
      break;
    case GenKind::butterfly:
      n = 6;
      edges = {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}};
      break;
    case GenKind::fan: {
      require(spec.k >= 1, "fan width must be >= 1");
      const int k = spec.k;
      n = 2 * k + 4;
      const int x = k + 1, y = k + 2, zx = k + 3;
      for (int i = 0; i < k; ++i) edges.emplace_back(i, x);
      edges.emplace_back(x, y);
      edges.emplace_back(x, zx);
      edges.emplace_back(k, y);  // the second source feeding y directly
      for (int j = 0; j < k; ++j) edges.emplace_back(y, k + 4 + j);
      break;
    }
    case GenKind::random_dag:
      require(spec.n >= 0, "graph size must be >= 0");
      require(spec.edge_prob >= 0.0 && spec.edge_prob <= 1.0,
              "edge probability must be in [0, 1]");
      n = spec.n;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rand_unit(rng) < spec.edge_prob) edges.emplace_back(i, j);
      break;
    case GenKind::planted_match:
      fail(Errc::invalid_spec, "planted base must be a plain kind");
  }
  return edges;
}

}  // namespace

const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::path: return "path";
    case GenKind::out_tree: return "out-tree";
    case GenKind::in_tree: return "in-tree";
    case GenKind::diamond: return "diamond";
    case GenKind::butterfly: return "butterfly";
    case GenKind::fan: return "fan";
    case GenKind::random_dag: return "random-dag";
    case GenKind::planted_match: return "planted-match";
  }
  return "?";
}

std::optional<GenKind> gen_kind_from_name(const std::string& name) {
  for (GenKind k : {GenKind::path, GenKind::out_tree, GenKind::in_tree,
                    GenKind::diamond, GenKind::butterfly, GenKind::fan,
                    GenKind::random_dag, GenKind::planted_match})
    if (name == gen_kind_name(k)) return k;
  return std::nullopt;
}

GenResult generate(const GenSpec& spec) {
  require(spec.sigma >= 1 && spec.sigma <= 26,
          "alphabet size must be in [1, 26]");
  std::mt19937_64 rng(spec.seed);
  const GenKind base =
      spec.kind == GenKind::planted_match ? spec.base_kind : spec.kind;
  int n = 0;
  std::vector<std::pair<int, int>> edges = structure(base, spec, n, rng);
  std::string chars(n, 'a');
  for (int i = 0; i < n; ++i)
    chars[i] = static_cast<char>('a' + rand_below(rng, spec.sigma));

  GenResult result;
  if (spec.kind == GenKind::planted_match) {
    std::string pat = spec.pattern;
    if (pat.empty()) {
      require(spec.plant_len >= 1, "planted length must be >= 1");
      pat.resize(spec.plant_len);
      for (char& c : pat)
        c = static_cast<char>('a' + rand_below(rng, spec.sigma));
    }
    for (unsigned char c : pat)
      require(c > 32 && c < 127, "pattern symbols must be printable");
    const int len = static_cast<int>(pat.size());
    // Longest path (in vertices) from each vertex, to steer the walk.
    std::vector<std::vector<int>> out(n);
    for (const auto& [u, v] : edges) out[u].push_back(v);
    std::vector<int> maxlen(n, 1);
    for (int v = n - 1; v >= 0; --v)  // edges go low -> high except in-trees
      for (int w : out[v]) maxlen[v] = std::max(maxlen[v], 1 + maxlen[w]);
    if (base == GenKind::in_tree)
      for (int v = 0; v < n; ++v)
        for (int w : out[v]) maxlen[v] = std::max(maxlen[v], 1 + maxlen[w]);
    std::vector<int> starts;
    for (int v = 0; v < n; ++v)
      if (maxlen[v] >= len) starts.push_back(v);
    require(!starts.empty(), "no path long enough to plant the pattern");
    int cur = starts[rand_below(rng, starts.size())];
    for (int pos = 0; pos < len; ++pos) {
      chars[cur] = pat[pos];
      if (pos + 1 == len) break;
      std::vector<int> nexts;
      for (int w : out[cur])
        if (maxlen[w] >= len - pos - 1) nexts.push_back(w);
      cur = nexts[rand_below(rng, nexts.size())];
    }
    result.pattern = pat;
  }

  Alphabet ab = Alphabet::from_symbols(chars);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i)
    labels[i] = ab.code(static_cast<unsigned char>(chars[i]));
  result.graph = make_digraph(n, std::move(edges), std::move(labels), ab);
  return result;
}

}  // namespace dagmatch
