#include "dpplab/ust.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace dpplab {

namespace detail {

void check_edge(int n, const OrientedEdge& e) {
  if (n < 2) throw ArgumentError("n must be at least 2");
  if (e.tail < 1 || e.tail > n || e.head < 1 || e.head > n) {
    throw ArgumentError("edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) +
                        ") has a vertex outside 1.." + std::to_string(n));
  }
  if (e.tail == e.head) throw ArgumentError("edge endpoints must differ");
}

}  // namespace detail

SpanningTree::SpanningTree(int vertices, std::vector<std::pair<int, int>> edge_list)
    : n(vertices), edges(std::move(edge_list)) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
}

bool SpanningTree::contains(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::vector<int> SpanningTree::degrees() const {
  std::vector<int> deg(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

int SpanningTree::distance(int a, int b) const {
  std::vector<std::vector<int>> adj(n + 1);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> dist(n + 1, -1);
  std::queue<int> q;
  dist[a] = 0;
  q.push(a);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    if (u == b) return dist[u];
    for (int w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return -1;
}

bool SpanningTree::valid() const {
  if (n < 1 || static_cast<int>(edges.size()) != n - 1) return false;
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : edges) {
    if (u < 1 || v > n || u == v) return false;
    const int a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

SpanningTree prufer_decode(int n, const std::vector<int>& code) {
  if (n < 2 || static_cast<int>(code.size()) != n - 2) {
    throw ArgumentError("prufer_decode: code must have length n-2");
  }
  std::vector<int> degree(n + 1, 1);
  for (int c : code) {
    if (c < 1 || c > n) throw ArgumentError("prufer_decode: code entry out of range");
    ++degree[c];
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  int ptr = 1;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int c : code) {
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n);
  return SpanningTree(n, std::move(edges));
}

TreeRange::TreeRange(int n) : n_(n) {
  if (n < 2) throw ArgumentError("enumerate_trees: n must be at least 2");
  if (n > 9) throw SizeError("enumerate_trees: n > 9 exceeds the enumeration cap (9^7 trees)");
}

TreeRange::iterator::iterator(int n, bool done) : n_(n), done_(done) {
  if (!done_) {
    code_.assign(n - 2, 1);
    decode();
  }
}

void TreeRange::iterator::decode() { tree_ = prufer_decode(n_, code_); }

TreeRange::iterator& TreeRange::iterator::operator++() {
  int i = static_cast<int>(code_.size()) - 1;
  while (i >= 0 && code_[i] == n_) {
    code_[i] = 1;
    --i;
  }
  if (i < 0) {
    done_ = true;
    return *this;
  }
  ++code_[i];
  decode();
  return *this;
}

std::vector<int> sample_wilson_parents(int n, RandomState& rng) {
  if (n < 2) throw ArgumentError("sample_wilson: n must be at least 2");
  std::vector<int> next(n + 1, 0);
  std::vector<char> in_tree(n + 1, 0);
  in_tree[1] = 1;
  const auto bound = static_cast<std::uint64_t>(n - 1);
  for (int start = 2; start <= n; ++start) {
    // Random walk until the tree is hit; overwriting next[] erases loops.
    int u = start;
    while (!in_tree[u]) {
      int w = 1 + static_cast<int>(rng.below(bound));
      if (w >= u) ++w;
      next[u] = w;
      u = w;
    }
    for (u = start; !in_tree[u]; u = next[u]) in_tree[u] = 1;
  }
  next[1] = 0;
  return next;
}

SpanningTree sample_wilson(int n, RandomState& rng) {
  const std::vector<int> parent = sample_wilson_parents(n, rng);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int v = 2; v <= n; ++v) edges.emplace_back(v, parent[v]);
  return SpanningTree(n, std::move(edges));
}

BigInt kirchhoff_count(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw ArgumentError("kirchhoff_count: need at least one vertex");
  if (n > 20) throw SizeError("kirchhoff_count: at most 20 vertices");
  std::vector<std::vector<char>> seen(n + 1, std::vector<char>(n + 1, 0));
  for (auto [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n) throw ArgumentError("kirchhoff_count: vertex out of range");
    if (u == v) throw ArgumentError("kirchhoff_count: loops are not allowed");
    if (seen[u][v]) throw ArgumentError("kirchhoff_count: repeated edge");
    seen[u][v] = seen[v][u] = 1;
  }
  if (n == 1) return BigInt(1);
  // Reduced incidence matrix: vertex n's row deleted, edges oriented u -> v.
  const std::size_t m = edges.size();
  const int r = n - 1;
  std::vector<std::vector<int>> inc(r, std::vector<int>(m, 0));
  for (std::size_t e = 0; e < m; ++e) {
    const auto [u, v] = edges[e];
    if (u <= r) inc[u - 1][e] = 1;
    if (v <= r) inc[v - 1][e] = -1;
  }
  std::vector<std::vector<BigInt>> a(r, std::vector<BigInt>(r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      long s = 0;
      for (std::size_t e = 0; e < m; ++e) s += inc[i][e] * inc[j][e];
      a[i][j] = s;
    }
  }
  // Bareiss fraction-free elimination.
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < r; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < r && a[p][k] == 0) ++p;
      if (p == r) return BigInt(0);
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < r; ++i) {
      for (int j = k + 1; j < r; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[r - 1][r - 1];
}

std::vector<std::pair<int, int>> complete_graph_edges(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

}  // namespace dpplab
