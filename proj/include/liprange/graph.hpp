#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

// Undirected simple graphs, the layered cycle C_{n,k}, BFS distances,
// ball/layer decompositions and the greedy disjoint-ball packing.

namespace lip {

class Graph {
 public:
  Graph() = default;

  // Build from an edge list.  Rejects self-loops; parallel edges collapse.
  static Graph from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    if (vertex_count <= 0) throw std::invalid_argument("graph needs at least one vertex");
    Graph g;
    g.adj_.assign(vertex_count, {});
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
        throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop not allowed");
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& nbrs : g.adj_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  long long edge_count() const {
    long long twice = 0;
    for (const auto& nbrs : adj_) twice += static_cast<long long>(nbrs.size());
    return twice / 2;
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  bool is_connected() const {
    if (vertex_count() == 0) return false;
    std::vector<char> seen(vertex_count(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          queue.push_back(w);
        }
    }
    return reached == vertex_count();
  }

  // Two-coloring check; fills *parity with the side of each vertex when
  // bipartite (parity of BFS distance on each component).
  bool is_bipartite(std::vector<int>* parity = nullptr) const {
    std::vector<int> color(vertex_count(), -1);
    for (int s = 0; s < vertex_count(); ++s) {
      if (color[s] != -1) continue;
      color[s] = 0;
      std::deque<int> queue{s};
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj_[v]) {
          if (color[w] == -1) {
            color[w] = color[v] ^ 1;
            queue.push_back(w);
          } else if (color[w] == color[v]) {
            return false;
          }
        }
      }
    }
    if (parity) *parity = std::move(color);
    return true;
  }

 private:
  std::vector<std::vector<int>> adj_;
};

// C_{n,k}: n layers of k independent vertices arranged in a cycle, with
// consecutive layers joined completely.  Vertex (u, u') has id u*k + u'.
// n must be even (the odd case is deliberately rejected).
inline Graph build_layered_cycle(int n, int k) {
  if (n < 4) throw std::invalid_argument("layered cycle needs n >= 4");
  if (n % 2 != 0) throw std::invalid_argument("layered cycle needs even n");
  if (k < 1) throw std::invalid_argument("layered cycle needs k >= 1");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * k * k);
  for (int layer = 0; layer < n; ++layer) {
    int next = (layer + 1) % n;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) edges.emplace_back(layer * k + a, next * k + b);
  }
  return Graph::from_edges(n * k, edges);
}

// Exact shortest-path distances from v.  Throws (naming an unreachable
// vertex) when the graph is disconnected.
inline std::vector<int> bfs_distances(const Graph& g, int v) {
  std::vector<int> dist(g.vertex_count(), -1);
  dist[v] = 0;
  std::deque<int> queue{v};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(x))
      if (dist[w] == -1) {
        dist[w] = dist[x] + 1;
        queue.push_back(w);
      }
  }
  for (int u = 0; u < g.vertex_count(); ++u)
    if (dist[u] == -1)
      throw std::runtime_error("graph is disconnected: vertex " + std::to_string(u) +
                               " unreachable from " + std::to_string(v));
  return dist;
}

// Ball of radius r around `center`, split into layers L_0..L_r where
// L_i holds the vertices at distance exactly r-i (L_0 is the boundary,
// L_r = {center}).
struct BallDecomposition {
  int center = 0;
  int radius = 0;
  std::vector<std::vector<int>> layers;  // layers[i] = L_i
  bool exact_radius = false;

  const std::vector<int>& boundary() const { return layers.front(); }

  std::vector<int> vertices() const {
    std::vector<int> all;
    for (const auto& layer : layers) all.insert(all.end(), layer.begin(), layer.end());
    std::sort(all.begin(), all.end());
    return all;
  }

  std::vector<int> interior() const {  // B_{r-1}
    std::vector<int> in;
    for (std::size_t i = 1; i < layers.size(); ++i)
      in.insert(in.end(), layers[i].begin(), layers[i].end());
    std::sort(in.begin(), in.end());
    return in;
  }

  // layer index of a vertex, or -1 if outside the ball
  int layer_of(int v, const std::vector<int>& dist_from_center) const {
    int d = dist_from_center[v];
    return d <= radius ? radius - d : -1;
  }
};

inline BallDecomposition ball(const Graph& g, int center, int radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
  auto dist = bfs_distances(g, center);
  BallDecomposition b;
  b.center = center;
  b.radius = radius;
  b.layers.assign(radius + 1, {});
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] <= radius) b.layers[radius - dist[v]].push_back(v);
    if (dist[v] == radius) b.exact_radius = true;
  }
  for (auto& layer : b.layers) std::sort(layer.begin(), layer.end());
  return b;
}

inline int ball_size(const Graph& g, int center, int radius) {
  auto dist = bfs_distances(g, center);
  int size = 0;
  for (int d : dist)
    if (d <= radius) ++size;
  return size;
}

inline int max_ball_size(const Graph& g, int radius) {
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) best = std::max(best, ball_size(g, v, radius));
  return best;
}

// Greedy packing of pairwise-disjoint exact-radius-r balls centered in W.
// Scans W in ascending vertex id; after selecting u, everything within
// distance 2r of u leaves candidacy.  Guarantees |U| >= floor(|W| / m^2)
// with m the maximum ball size of radius r.
inline std::vector<int> pack_disjoint_balls(const Graph& g, std::vector<int> candidates,
                                            int radius) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<char> blocked(g.vertex_count(), 0);
  std::vector<int> selected;
  for (int u : candidates) {
    if (blocked[u]) continue;
    auto dist = bfs_distances(g, u);
    bool exact = false;
    for (int d : dist)
      if (d == radius) exact = true;
    if (!exact) continue;
    bool overlap = false;
    for (int v = 0; v < g.vertex_count() && !overlap; ++v)
      if (dist[v] <= radius && blocked[v] == 2) overlap = true;
    if (overlap) continue;
    selected.push_back(u);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (dist[v] <= radius) blocked[v] = 2;  // inside a chosen ball
      else if (dist[v] <= 2 * radius && !blocked[v]) blocked[v] = 1;
    }
  }
  return selected;
}

// Largest r >= 1 with max ball size of radius r-1 at most c*log2(n);
// 0 when even r=1 fails.  Capped once balls stop growing.
inline int choose_radius(const Graph& g, double c) {
  if (c <= 0) throw std::invalid_argument("choose_radius needs c > 0");
  const double budget = c * std::log2(static_cast<double>(g.vertex_count()));
  if (max_ball_size(g, 0) > budget) return 0;
  int r = 1;
  while (true) {
    int size = max_ball_size(g, r);
    if (size > budget) return r;
    if (size == g.vertex_count()) return r + 1;  // balls cannot grow further
    ++r;
  }
}

}  // namespace lip
