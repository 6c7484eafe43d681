#ifndef SKOLEM_MATCHING_HPP
#define SKOLEM_MATCHING_HPP

/// Finite bipartite graphs with the one query the membership criterion
/// needs: does a matching cover a given node set on one side? Answered by
/// maximum matching (augmenting paths) on the induced subgraph.

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "skolem/errors.hpp"

namespace skolem {

enum class Side { Left, Right };

class BipartiteGraph {
 public:
  /// Nodes are 1-based on each side. Duplicate edges collapse.
  BipartiteGraph(int leftCount, int rightCount,
                 std::vector<std::pair<int, int>> edges)
      : left_(leftCount), right_(rightCount), edges_(std::move(edges)) {
    if (leftCount < 0 || rightCount < 0)
      throw DimensionError("negative node count");
    for (const auto& [l, r] : edges_) {
      if (l < 1 || l > left_ || r < 1 || r > right_)
        throw DimensionError("edge (" + std::to_string(l) + "," +
                             std::to_string(r) + ") out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  int leftCount() const { return left_; }
  int rightCount() const { return right_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int left_;
  int right_;
  std::vector<std::pair<int, int>> edges_;
};

namespace detail {

// Kuhn's augmenting-path matching, run from the given left nodes only.
// Returns the number of those nodes that end up matched.
inline int matchFrom(const std::vector<std::vector<int>>& adj,
                     const std::vector<int>& sources, int rightCount) {
  std::vector<int> matchRight(static_cast<std::size_t>(rightCount) + 1, 0);
  std::vector<char> visited;
  std::function<bool(int)> tryAugment = [&](int l) -> bool {
    for (int r : adj[static_cast<std::size_t>(l)]) {
      if (visited[static_cast<std::size_t>(r)]) continue;
      visited[static_cast<std::size_t>(r)] = 1;
      if (matchRight[static_cast<std::size_t>(r)] == 0 ||
          tryAugment(matchRight[static_cast<std::size_t>(r)])) {
        matchRight[static_cast<std::size_t>(r)] = l;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int l : sources) {
    visited.assign(static_cast<std::size_t>(rightCount) + 1, 0);
    if (tryAugment(l)) ++matched;
  }
  return matched;
}

}  // namespace detail

inline int maxMatchingSize(const BipartiteGraph& g) {
  std::vector<std::vector<int>> adj(
      static_cast<std::size_t>(g.leftCount()) + 1);
  for (const auto& [l, r] : g.edges())
    adj[static_cast<std::size_t>(l)].push_back(r);
  std::vector<int> all;
  for (int l = 1; l <= g.leftCount(); ++l) all.push_back(l);
  return detail::matchFrom(adj, all, g.rightCount());
}

/// True iff some set of pairwise non-adjacent edges covers every node in
/// `nodes` on the given side. Only the covered side is restricted; partners
/// may be any node on the other side.
inline bool hasMatchingCovering(const BipartiteGraph& g, Side side,
                                std::span<const int> nodes) {
  const int covered = side == Side::Left ? g.leftCount() : g.rightCount();
  const int other = side == Side::Left ? g.rightCount() : g.leftCount();
  std::vector<int> wanted(nodes.begin(), nodes.end());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  for (int n : wanted)
    if (n < 1 || n > covered)
      throw DimensionError("covered node " + std::to_string(n) +
                           " out of range");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(covered) + 1);
  for (const auto& [l, r] : g.edges()) {
    int from = side == Side::Left ? l : r;
    int to = side == Side::Left ? r : l;
    adj[static_cast<std::size_t>(from)].push_back(to);
  }
  return detail::matchFrom(adj, wanted, other) ==
         static_cast<int>(wanted.size());
}

}  // namespace skolem

#endif  // SKOLEM_MATCHING_HPP
