#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dagmatch {

// Symbol <-> code table. Codes are assigned in ascending byte order, so the
// same symbol set always yields the same coding.
class Alphabet {
 public:
  Alphabet() { char_to_code_.fill(-1); }

  static Alphabet from_symbols(std::string_view text);

  int code(unsigned char c) const { return char_to_code_[c]; }
  unsigned char symbol(int code) const { return code_to_char_[code]; }
  int size() const { return static_cast<int>(code_to_char_.size()); }

  // Returns the code of c, appending a new one if absent.
  int add(unsigned char c);

  // Encodes s, appending codes for unseen symbols.
  std::vector<int> encode_extending(std::string_view s);

 private:
  std::array<int, 256> char_to_code_;
  std::vector<unsigned char> code_to_char_;
};

// Directed graph with one label code per vertex. Cycles allowed.
// Adjacency lists keep edge insertion order.
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> out_adj;
  std::vector<std::vector<int>> in_adj;
  std::vector<int> labels;
  Alphabet alphabet;

  int out_degree(int v) const { return static_cast<int>(out_adj[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_adj[v].size()); }
  bool has_edge(int u, int v) const;
};

// Validates ranges, rejects self-loops and duplicate edges, builds adjacency.
Digraph make_digraph(int n, std::vector<std::pair<int, int>> edges,
                     std::vector<int> labels, Alphabet alphabet);

// File format:
//   line 1: "<n> <m>"
//   line 2: n printable non-space characters (vertex labels)
//   m lines: "<u> <v>"
// '#' comment lines and blank lines are ignored everywhere.
Digraph parse_graph(std::istream& in);
Digraph parse_graph(const std::string& text);
std::string serialize_graph(const Digraph& g);

// First non-blank, non-comment line, stripped of trailing CR/LF.
std::string parse_pattern(const std::string& text);

// Kahn's algorithm, smallest-index-first tie break. nullopt on a cycle.
std::optional<std::vector<int>> topological_order(const Digraph& g);

Digraph reverse(const Digraph& g);

struct InducedSubgraph {
  Digraph graph;
  std::vector<int> old_of_new;  // new id -> original id
  std::vector<int> new_of_old;  // original id -> new id, -1 if dropped
};
InducedSubgraph induced_subgraph(const Digraph& g, const std::vector<int>& keep);

// Contracts (u, v): the merged vertex keeps u's index and label, parallel
// edges collapse, self-loops are dropped. Vertices above v shift down by one.
struct ContractedGraph {
  Digraph graph;
  std::vector<int> new_of_old;
};
ContractedGraph contract_edge(const Digraph& g, int u, int v);

struct LabeledDag {
  Digraph g;
  std::vector<int> topo;      // topo[i] = vertex in position i
  std::vector<int> topo_pos;  // inverse of topo
  std::vector<int> sources;
  std::vector<int> sinks;
  // Flattened copy of g.in_adj for the matcher hot loops: the in-neighbors
  // of v are in_flat[in_start[v] .. in_start[v+1]).
  std::vector<int> in_start;
  std::vector<int> in_flat;
};

// nullopt when g has a cycle.
std::optional<LabeledDag> make_labeled_dag(Digraph g);

}  // namespace dagmatch
