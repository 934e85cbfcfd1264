#pragma once

#include "dynwalk/chain/types.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace dynwalk {

using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on vertices 0..n-1.
class GraphSnapshot {
 public:
  GraphSnapshot() = default;

  GraphSnapshot(int n, std::vector<Edge> edges) : n_(n) {
    detail::require(n >= 1, "graph: n must be >= 1");
    adj_.assign(static_cast<std::size_t>(n), {});
    for (auto& [a, b] : edges) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw InvalidInput(detail::concat("graph: edge {", a, ",", b, "} out of range for n=", n));
      if (a == b) throw InvalidInput(detail::concat("graph: self-loop at vertex ", a));
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      const auto dup = *std::adjacent_find(edges.begin(), edges.end());
      throw InvalidInput(detail::concat("graph: duplicate edge {", dup.first, ",", dup.second, "}"));
    }
    edges_ = std::move(edges);
    for (auto [a, b] : edges_) {
      adj_[static_cast<std::size_t>(a)].push_back(b);
      adj_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& l : adj_) std::sort(l.begin(), l.end());
  }

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  [[nodiscard]] int max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
    return d;
  }

  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) return false;
    const auto& l = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(l.begin(), l.end(), b);
  }

  [[nodiscard]] bool connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj_[static_cast<std::size_t>(u)])
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    return count == n_;
  }

  /// Image of the graph under a vertex permutation: edges {eta(u), eta(v)}.
  [[nodiscard]] GraphSnapshot permuted(const std::vector<Vertex>& eta) const {
    detail::require(static_cast<int>(eta.size()) == n_, "graph: permutation size mismatch");
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (auto [a, b] : edges_) e.emplace_back(eta[static_cast<std::size_t>(a)], eta[static_cast<std::size_t>(b)]);
    return GraphSnapshot(n_, std::move(e));
  }

  friend bool operator==(const GraphSnapshot& a, const GraphSnapshot& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

namespace graphs {

inline GraphSnapshot cycle(int n) {
  detail::require(n >= 3, detail::concat("cycle graph needs n >= 3, got ", n));
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return GraphSnapshot(n, std::move(e));
}

inline GraphSnapshot path(int n) {
  detail::require(n >= 2, detail::concat("path graph needs n >= 2, got ", n));
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return GraphSnapshot(n, std::move(e));
}

inline GraphSnapshot complete(int n) {
  detail::require(n >= 2, detail::concat("complete graph needs n >= 2, got ", n));
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return GraphSnapshot(n, std::move(e));
}

/// Star on n vertices with the given center (n - 1 leaves).
inline GraphSnapshot star(int n, Vertex center = 0) {
  detail::require(n >= 2, detail::concat("star graph needs n >= 2, got ", n));
  require_vertex(n, center, "star");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    if (i != center) e.emplace_back(center, i);
  return GraphSnapshot(n, std::move(e));
}

inline GraphSnapshot by_name(const std::string& name, int n) {
  if (name == "cycle") return cycle(n);
  if (name == "path") return path(n);
  if (name == "complete") return complete(n);
  if (name == "star") return star(n);
  throw InvalidInput(detail::concat("unknown graph name '", name, "' (expected cycle, path, complete, star)"));
}

}  // namespace graphs

}  // namespace dynwalk
