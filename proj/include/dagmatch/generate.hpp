#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dagmatch/graph.hpp"

namespace dagmatch {

enum class GenKind {
  path,
  out_tree,
  in_tree,
  diamond,
  butterfly,
  fan,
  random_dag,
  planted_match,
};

const char* gen_kind_name(GenKind k);
std::optional<GenKind> gen_kind_from_name(const std::string& name);

struct GenSpec {
  GenKind kind = GenKind::path;
  int n = 0;          // path, trees, random_dag
  int k = 0;          // fan width
  double edge_prob = 0.25;
  int sigma = 2;
  uint64_t seed = 0;
  // planted_match only:
  GenKind base_kind = GenKind::random_dag;
  std::string pattern;  // plants this string; when empty, plant_len is used
  int plant_len = 0;
};

struct GenResult {
  Digraph graph;
  std::optional<std::string> pattern;  // set for planted_match
};

// Deterministic for a fixed spec (single mt19937_64 stream). Throws
// invalid_spec on unusable parameters (e.g. no path long enough to plant).
GenResult generate(const GenSpec& spec);

}  // namespace dagmatch
