#include "dagmatch/pattern.hpp"

#include <algorithm>
#include <numeric>

#include "dagmatch/error.hpp"

namespace dagmatch {

std::vector<int> failure_function(const std::vector<int>& codes) {
  const int m = static_cast<int>(codes.size());
  if (m == 0) fail(Errc::empty_pattern, "failure function of empty pattern");
  std::vector<int> f(m + 1, 0);
  for (int i = 2; i <= m; ++i) {
    int k = f[i - 1];
    while (k > 0 && codes[k] != codes[i - 1]) k = f[k];
    if (codes[k] == codes[i - 1]) ++k;
    f[i] = k;
  }
  return f;
}

std::vector<int> matching_automaton(const std::vector<int>& codes, int sigma,
                                    const std::vector<int>& fail) {
  const int m = static_cast<int>(codes.size());
  std::vector<int> a(static_cast<size_t>(m + 1) * sigma, 0);
  for (int c = 0; c < sigma; ++c) a[c] = (codes[0] == c) ? 1 : 0;
  for (int i = 1; i <= m; ++i)
    for (int c = 0; c < sigma; ++c) {
      if (i < m && codes[i] == c)
        a[static_cast<size_t>(i) * sigma + c] = i + 1;
      else
        a[static_cast<size_t>(i) * sigma + c] =
            a[static_cast<size_t>(fail[i]) * sigma + c];
    }
  return a;
}

void build_bp(const std::vector<int>& fail, std::vector<int>& open,
              std::vector<int>& close) {
  const int m = static_cast<int>(fail.size()) - 1;
  std::vector<std::vector<int>> children(m + 1);
  for (int i = 1; i <= m; ++i) children[fail[i]].push_back(i);
  open.assign(m + 1, 0);
  close.assign(m + 1, 0);
  int pos = 0;
  // Explicit stack; entries carry the next child slot to visit.
  std::vector<std::pair<int, size_t>> stack;
  stack.emplace_back(0, 0);
  open[0] = pos++;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < children[node].size()) {
      int child = children[node][next++];
      open[child] = pos++;
      stack.emplace_back(child, 0);
    } else {
      close[node] = pos++;
      stack.pop_back();
    }
  }
}

int leaf_count(const std::vector<int>& fail) {
  const int m = static_cast<int>(fail.size()) - 1;
  std::vector<bool> internal(m + 1, false);
  for (int i = 1; i <= m; ++i) internal[fail[i]] = true;
  int w = 0;
  for (int i = 0; i <= m; ++i)
    if (!internal[i]) ++w;
  return w;
}

namespace {

// Rank array (inverse suffix array) by prefix doubling.
std::vector<int> suffix_ranks(const std::vector<int>& text) {
  const int n = static_cast<int>(text.size());
  std::vector<int> rank(text.begin(), text.end());
  std::vector<int> order(n), next_rank(n);
  std::iota(order.begin(), order.end(), 0);
  for (int len = 1;; len *= 2) {
    auto key = [&](int p) {
      return std::pair<int, int>(rank[p],
                                 p + len < n ? rank[p + len] + 1 : 0);
    };
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return key(a) < key(b); });
    next_rank[order[0]] = 0;
    for (int i = 1; i < n; ++i)
      next_rank[order[i]] =
          next_rank[order[i - 1]] + (key(order[i - 1]) < key(order[i]) ? 1 : 0);
    rank = next_rank;
    if (rank[order[n - 1]] == n - 1) break;
  }
  return rank;
}

}  // namespace

std::vector<int> reversed_suffix_order(const std::vector<int>& codes) {
  const int m = static_cast<int>(codes.size());
  // R = S^r with a sentinel smaller than every code (codes shifted by +1).
  std::vector<int> r(m + 1);
  for (int p = 0; p < m; ++p) r[p] = codes[m - 1 - p] + 1;
  r[m] = 0;
  std::vector<int> rank = suffix_ranks(r);
  // The reversed prefix of length i is the suffix of R at position m - i.
  std::vector<int> rev(m + 1);
  for (int i = 0; i <= m; ++i) rev[i] = rank[m - i];
  return rev;
}

PatternIndex build_pattern_index(std::vector<int> codes, int sigma) {
  if (codes.empty()) fail(Errc::empty_pattern, "empty pattern");
  for (int c : codes)
    if (c < 0 || c >= sigma)
      fail(Errc::invalid_spec, "pattern code out of alphabet range");
  PatternIndex idx;
  idx.m = static_cast<int>(codes.size());
  idx.sigma = sigma;
  idx.codes = std::move(codes);
  idx.fail = failure_function(idx.codes);
  std::vector<int> rev_codes(idx.codes.rbegin(), idx.codes.rend());
  idx.fail_rev = failure_function(rev_codes);
  idx.autom = matching_automaton(idx.codes, sigma, idx.fail);
  build_bp(idx.fail, idx.open, idx.close);
  idx.leaves = leaf_count(idx.fail);
  idx.rev_rank = reversed_suffix_order(idx.codes);
  return idx;
}

PatternIndex index_from_string(std::string_view pattern) {
  Alphabet a = Alphabet::from_symbols(pattern);
  std::vector<int> codes;
  codes.reserve(pattern.size());
  for (unsigned char c : pattern) codes.push_back(a.code(c));
  return build_pattern_index(std::move(codes), a.size());
}

}  // namespace dagmatch
