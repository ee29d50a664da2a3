#pragma once

// Brute-force reference computations for the tests. Everything here is
// written from definitions and avoids the library's algorithms.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

namespace oracle {

using Edge = std::pair<int, int>;
using Cx = std::complex<double>;

/// Edges (u, v), u < v, of K_n in lexicographic order; vertices 1..n.
inline std::vector<Edge> complete_edges(int n) {
  std::vector<Edge> e;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  }
  return e;
}

/// Every spanning tree of K_n as a bitmask over complete_edges(n), found by
/// scanning all (n-1)-edge subsets and keeping the acyclic ones.
inline std::vector<std::uint64_t> spanning_tree_masks(int n) {
  const auto edges = complete_edges(n);
  const int m = static_cast<int>(edges.size());
  std::vector<std::uint64_t> out;
  std::vector<int> pick(static_cast<std::size_t>(n - 1));
  std::iota(pick.begin(), pick.end(), 0);
  if (n == 1) return {0};
  while (true) {
    std::vector<int> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    bool acyclic = true;
    std::uint64_t mask = 0;
    for (int i : pick) {
      const int a = find(edges[i].first), b = find(edges[i].second);
      if (a == b) {
        acyclic = false;
        break;
      }
      parent[a] = b;
      mask |= std::uint64_t{1} << i;
    }
    if (acyclic) out.push_back(mask);
    int k = n - 2;
    while (k >= 0 && pick[k] == m - (n - 1) + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

inline std::vector<Edge> mask_edges(int n, std::uint64_t mask) {
  const auto edges = complete_edges(n);
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if ((mask >> i) & 1u) out.push_back(edges[i]);
  }
  return out;
}

inline int edge_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  const auto edges = complete_edges(n);
  return static_cast<int>(std::find(edges.begin(), edges.end(), Edge{u, v}) - edges.begin());
}

/// Breadth-first distances from `source` in the graph with the given edges.
inline std::vector<int> distances(int n, const std::vector<Edge>& edges, int source) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> d(static_cast<std::size_t>(n) + 1, -1);
  std::queue<int> q;
  d[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : adj[x]) {
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
    }
  }
  return d;
}

inline std::vector<int> degrees(int n, const std::vector<Edge>& edges) {
  std::vector<int> d(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

/// Determinant by cofactor expansion along the first row.
inline Cx det_cofactor(const std::vector<std::vector<Cx>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  Cx total = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Cx>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Cx> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(a[r][j]);
      }
      minor.push_back(std::move(row));
    }
    total += (c % 2 ? -1.0 : 1.0) * a[0][c] * det_cofactor(minor);
  }
  return total;
}

/// Law of a projection process with orthonormal rows phi_i on points with
/// masses w: P(A) = det[K(x, y) sqrt(w_x w_y)]_{x, y in A}, K = sum phi_i(x) conj(phi_i(y)).
inline std::map<std::vector<int>, double> projection_law(const std::vector<std::vector<Cx>>& rows,
                                                         const std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  const int r = static_cast<int>(rows.size());
  std::map<std::vector<int>, double> law;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != r) continue;
    std::vector<int> a;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) a.push_back(i);
    }
    std::vector<std::vector<Cx>> k(static_cast<std::size_t>(r), std::vector<Cx>(static_cast<std::size_t>(r)));
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        Cx s = 0.0;
        for (int l = 0; l < r; ++l) s += rows[l][a[i]] * std::conj(rows[l][a[j]]);
        k[i][j] = s * std::sqrt(w[a[i]] * w[a[j]]);
      }
    }
    law[a] = det_cofactor(k).real();
  }
  return law;
}

/// Largest weight of an up-right path from (0,0) to (m-1,n-1), by walking every path.
inline double lpp_all_paths(const std::vector<std::vector<double>>& w, int i = 0, int j = 0) {
  const int m = static_cast<int>(w.size()), n = static_cast<int>(w[0].size());
  const double here = w[i][j];
  if (i == m - 1 && j == n - 1) return here;
  double best = -1e300;
  if (i + 1 < m) best = std::max(best, lpp_all_paths(w, i + 1, j));
  if (j + 1 < n) best = std::max(best, lpp_all_paths(w, i, j + 1));
  return here + best;
}

/// Upsets of the order leq on {0..n-1}, by testing every subset.
inline std::vector<std::uint32_t> upsets(int n, const std::function<bool(int, int)>& leq) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int a = 0; a < n && closed; ++a) {
      if (!((mask >> a) & 1u)) continue;
      for (int b = 0; b < n; ++b) {
        if (leq(a, b) && !((mask >> b) & 1u)) {
          closed = false;
          break;
        }
      }
    }
    if (closed) out.push_back(mask);
  }
  return out;
}

/// min over upsets U of p2(U) - p1(U).
inline double upset_margin(int n, const std::function<bool(int, int)>& leq, const std::vector<double>& p1,
                           const std::vector<double>& p2) {
  double best = 0.0;
  for (std::uint32_t mask : upsets(n, leq)) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) s += p2[i] - p1[i];
    }
    best = std::min(best, s);
  }
  return best;
}

/// Containment check between an n-subset law and an (n+1)-subset law:
/// min over families F of n-subsets of P2(sets containing a member of F) - P1(F).
inline double family_margin(const std::map<std::vector<int>, double>& lower,
                            const std::map<std::vector<int>, double>& upper) {
  std::vector<std::pair<std::vector<int>, double>> lo(lower.begin(), lower.end());
  const std::size_t k = lo.size();
  double best = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    double p1 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) p1 += lo[i].second;
    }
    double p2 = 0.0;
    for (const auto& [b, p] : upper) {
      for (std::size_t i = 0; i < k; ++i) {
        if (((mask >> i) & 1u) && std::includes(b.begin(), b.end(), lo[i].first.begin(), lo[i].first.end())) {
          p2 += p;
          break;
        }
      }
    }
    best = std::min(best, p2 - p1);
  }
  return best;
}

}  // namespace oracle
