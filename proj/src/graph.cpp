#include "dagmatch/graph.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "dagmatch/error.hpp"

namespace dagmatch {

Alphabet Alphabet::from_symbols(std::string_view text) {
  std::array<bool, 256> seen{};
  for (unsigned char c : text) seen[c] = true;
  Alphabet a;
  for (int c = 0; c < 256; ++c)
    if (seen[c]) a.add(static_cast<unsigned char>(c));
  return a;
}

int Alphabet::add(unsigned char c) {
  if (char_to_code_[c] >= 0) return char_to_code_[c];
  char_to_code_[c] = static_cast<int>(code_to_char_.size());
  code_to_char_.push_back(c);
  return char_to_code_[c];
}

std::vector<int> Alphabet::encode_extending(std::string_view s) {
  std::vector<int> out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(add(c));
  return out;
}

bool Digraph::has_edge(int u, int v) const {
  const auto& adj = out_adj[u];
  return std::find(adj.begin(), adj.end(), v) != adj.end();
}

Digraph make_digraph(int n, std::vector<std::pair<int, int>> edges,
                     std::vector<int> labels, Alphabet alphabet) {
  if (static_cast<int>(labels.size()) != n)
    fail(Errc::label_length_mismatch,
         "expected " + std::to_string(n) + " labels, got " +
             std::to_string(labels.size()));
  Digraph g;
  g.n = n;
  g.labels = std::move(labels);
  g.alphabet = std::move(alphabet);
  g.out_adj.assign(n, {});
  g.in_adj.assign(n, {});
  std::unordered_set<int64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(Errc::vertex_out_of_range,
           "edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    if (u == v) fail(Errc::self_loop, "vertex " + std::to_string(u));
    if (!seen.insert(static_cast<int64_t>(u) * n + v).second)
      fail(Errc::duplicate_edge,
           "edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    g.out_adj[u].push_back(v);
    g.in_adj[v].push_back(u);
  }
  g.edges = std::move(edges);
  return g;
}

namespace {

// Strips trailing CR, returns false for blank and '#' comment lines.
bool content_line(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
    line.pop_back();
  size_t i = line.find_first_not_of(" \t");
  if (i == std::string::npos) return false;
  return line[i] != '#';
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line))
    if (content_line(line)) return true;
  return false;
}

bool parse_two_ints(const std::string& line, long long& a, long long& b) {
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> a >> b)) return false;
  if (ss >> extra) return false;
  return true;
}

}  // namespace

Digraph parse_graph(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line))
    fail(Errc::malformed_header, "missing \"<n> <m>\" header line");
  long long n = 0, m = 0;
  if (!parse_two_ints(line, n, m) || n < 0 || m < 0)
    fail(Errc::malformed_header, "bad header line: \"" + line + "\"");

  std::string labels;
  if (n > 0) {
    if (!next_content_line(in, labels))
      fail(Errc::label_length_mismatch, "missing label line");
    if (static_cast<long long>(labels.size()) != n)
      fail(Errc::label_length_mismatch,
           "expected " + std::to_string(n) + " labels, got " +
               std::to_string(labels.size()));
    for (unsigned char c : labels)
      if (!std::isprint(c) || std::isspace(c))
        fail(Errc::malformed_header, "label line has a non-printable byte");
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line))
      fail(Errc::malformed_header,
           "expected " + std::to_string(m) + " edge lines, got " +
               std::to_string(i));
    long long u = 0, v = 0;
    if (!parse_two_ints(line, u, v))
      fail(Errc::malformed_header, "bad edge line: \"" + line + "\"");
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(Errc::vertex_out_of_range, "edge line: \"" + line + "\"");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  Alphabet alpha = Alphabet::from_symbols(labels);
  std::vector<int> codes;
  codes.reserve(labels.size());
  for (unsigned char c : labels) codes.push_back(alpha.code(c));
  return make_digraph(static_cast<int>(n), std::move(edges), std::move(codes),
                      std::move(alpha));
}

Digraph parse_graph(const std::string& text) {
  std::istringstream ss(text);
  return parse_graph(ss);
}

std::string serialize_graph(const Digraph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << '\n';
  if (g.n > 0) {
    std::string labels(g.n, '?');
    for (int v = 0; v < g.n; ++v)
      labels[v] = static_cast<char>(g.alphabet.symbol(g.labels[v]));
    out << labels << '\n';
  }
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

std::string parse_pattern(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  if (!next_content_line(ss, line))
    fail(Errc::empty_pattern, "no pattern line");
  // Trim surrounding whitespace; the pattern itself has no spaces.
  size_t b = line.find_first_not_of(" \t");
  size_t e = line.find_last_not_of(" \t");
  return line.substr(b, e - b + 1);
}

std::optional<std::vector<int>> topological_order(const Digraph& g) {
  std::vector<int> indeg(g.n);
  for (int v = 0; v < g.n; ++v) indeg[v] = g.in_degree(v);
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < g.n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(g.n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : g.out_adj[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != g.n) return std::nullopt;
  return order;
}

Digraph reverse(const Digraph& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) edges.emplace_back(v, u);
  return make_digraph(g.n, std::move(edges), g.labels, g.alphabet);
}

InducedSubgraph induced_subgraph(const Digraph& g,
                                 const std::vector<int>& keep) {
  InducedSubgraph r;
  r.new_of_old.assign(g.n, -1);
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int v : sorted) {
    if (v < 0 || v >= g.n)
      fail(Errc::vertex_out_of_range, "induced vertex " + std::to_string(v));
    r.new_of_old[v] = static_cast<int>(r.old_of_new.size());
    r.old_of_new.push_back(v);
  }
  std::vector<int> labels;
  labels.reserve(r.old_of_new.size());
  for (int v : r.old_of_new) labels.push_back(g.labels[v]);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (r.new_of_old[u] >= 0 && r.new_of_old[v] >= 0)
      edges.emplace_back(r.new_of_old[u], r.new_of_old[v]);
  r.graph = make_digraph(static_cast<int>(r.old_of_new.size()),
                         std::move(edges), std::move(labels), g.alphabet);
  return r;
}

ContractedGraph contract_edge(const Digraph& g, int u, int v) {
  if (u < 0 || u >= g.n || v < 0 || v >= g.n || !g.has_edge(u, v))
    fail(Errc::edge_not_present,
         "edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  ContractedGraph r;
  r.new_of_old.assign(g.n, -1);
  for (int x = 0; x < g.n; ++x)
    if (x != v) r.new_of_old[x] = x < v ? x : x - 1;
  r.new_of_old[v] = r.new_of_old[u];

  std::vector<int> labels(g.n - 1);
  for (int x = 0; x < g.n; ++x)
    if (x != v) labels[r.new_of_old[x]] = g.labels[x];

  std::vector<std::pair<int, int>> edges;
  std::unordered_set<int64_t> seen;
  for (auto [a, b] : g.edges) {
    int na = r.new_of_old[a], nb = r.new_of_old[b];
    if (na == nb) continue;  // collapsed into the merged vertex or a self-loop
    if (seen.insert(static_cast<int64_t>(na) * (g.n - 1) + nb).second)
      edges.emplace_back(na, nb);
  }
  r.graph = make_digraph(g.n - 1, std::move(edges), std::move(labels),
                         g.alphabet);
  return r;
}

std::optional<LabeledDag> make_labeled_dag(Digraph g) {
  auto order = topological_order(g);
  if (!order) return std::nullopt;
  LabeledDag dag;
  dag.topo = std::move(*order);
  dag.topo_pos.assign(g.n, 0);
  for (int i = 0; i < g.n; ++i) dag.topo_pos[dag.topo[i]] = i;
  for (int v = 0; v < g.n; ++v) {
    if (g.in_degree(v) == 0) dag.sources.push_back(v);
    if (g.out_degree(v) == 0) dag.sinks.push_back(v);
  }
  dag.in_start.assign(g.n + 1, 0);
  dag.in_flat.reserve(g.edges.size());
  for (int v = 0; v < g.n; ++v) {
    for (int u : g.in_adj[v]) dag.in_flat.push_back(u);
    dag.in_start[v + 1] = static_cast<int>(dag.in_flat.size());
  }
  dag.g = std::move(g);
  return dag;
}

}  // namespace dagmatch
