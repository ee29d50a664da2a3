#pragma once

// Uniform spanning tree of the complete graph K_n (vertices 1..n): exact
// closed forms, the transfer-current kernel, Pruefer enumeration, Wilson
// sampling, and Kirchhoff counting for small arbitrary graphs.
//
// Closed forms are templates over the scalar: instantiate with Rational for
// exact values or double for large n.

#include <boost/multiprecision/cpp_int.hpp>
#include <iterator>
#include <type_traits>
#include <utility>
#include <vector>

#include "dpplab/error.hpp"
#include "dpplab/random.hpp"

namespace dpplab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct OrientedEdge {
  int tail = 0;
  int head = 0;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Edge list of a spanning tree; each edge stored as (min, max), list sorted.
struct SpanningTree {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  SpanningTree() = default;
  SpanningTree(int vertices, std::vector<std::pair<int, int>> edge_list);

  bool contains(int u, int v) const;
  std::vector<int> degrees() const;  // index 1..n
  /// Graph distance between a and b.
  int distance(int a, int b) const;
  /// True when the edges form a spanning tree on 1..n.
  bool valid() const;
  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

namespace detail {

void check_edge(int n, const OrientedEdge& e);

template <typename T>
T power(T base, long exponent) {
  T r(1);
  for (long i = 0; i < exponent; ++i) r *= base;
  return r;
}

template <typename T>
T ratio(long num, long den) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(num, den);
  } else {
    return static_cast<T>(num) / static_cast<T>(den);
  }
}

/// Determinant by Gaussian elimination. Exact for Rational (first nonzero
/// pivot); partial pivoting for floating point.
template <typename T>
T elimination_det(std::vector<std::vector<T>> a) {
  const std::size_t n = a.size();
  T d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    if constexpr (std::is_same_v<T, Rational>) {
      while (p < n && a[p][c] == 0) ++p;
      if (p == n) return T(0);
    } else {
      using std::abs;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (abs(a[r][c]) > abs(a[p][c])) p = r;
      }
      if (a[p][c] == T(0)) return T(0);
    }
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == T(0)) continue;
      const T f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

}  // namespace detail

/// Transfer current M(e, f) on K_n: 2/n when f = e, -2/n for the reversal,
/// +-1/n when the edges share exactly one endpoint, 0 otherwise.
template <typename T = Rational>
T transfer_current(int n, const OrientedEdge& e, const OrientedEdge& f) {
  detail::check_edge(n, e);
  detail::check_edge(n, f);
  if (e == f) return detail::ratio<T>(2, n);
  if (e.tail == f.head && e.head == f.tail) return detail::ratio<T>(-2, n);
  // Unit current enters at e.tail and leaves at e.head.
  if (f.tail == e.tail || f.head == e.head) return detail::ratio<T>(1, n);
  if (f.head == e.tail || f.tail == e.head) return detail::ratio<T>(-1, n);
  return T(0);
}

/// P(every in-edge is in the tree and no out-edge is).
template <typename T = Rational>
T subset_probability(int n, const std::vector<OrientedEdge>& in_edges,
                     const std::vector<OrientedEdge>& out_edges) {
  std::vector<OrientedEdge> all(in_edges);
  all.insert(all.end(), out_edges.begin(), out_edges.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    detail::check_edge(n, all[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const bool same = (all[i].tail == all[j].tail && all[i].head == all[j].head) ||
                        (all[i].tail == all[j].head && all[i].head == all[j].tail);
      if (same) throw ArgumentError("subset_probability: edge lists overlap or repeat an edge");
    }
  }
  const std::size_t s = all.size();
  std::vector<std::vector<T>> m(s, std::vector<T>(s));
  for (std::size_t i = 0; i < s; ++i) {
    const bool out = i >= in_edges.size();
    for (std::size_t j = 0; j < s; ++j) {
      const T v = transfer_current<T>(n, all[i], all[j]);
      m[i][j] = out ? (i == j ? T(1) - v : -v) : v;
    }
  }
  return detail::elimination_det(std::move(m));
}

/// P(d(v1, v2) = k) for k = 1..n-1 (element k-1).
template <typename T = Rational>
std::vector<T> distance_pmf(int n) {
  if (n < 2) throw ArgumentError("distance_pmf: n must be at least 2");
  std::vector<T> pmf;
  T survive(1);  // prod_{i=1}^{k-1} (1 - (i+1)/n)
  for (int k = 1; k <= n - 1; ++k) {
    pmf.push_back(detail::ratio<T>(k + 1, n) * survive);
    survive *= T(1) - detail::ratio<T>(k + 1, n);
  }
  return pmf;
}

/// Probability that k chosen vertices span a given labeled binary shape
/// (k leaves, k-2 branch points, 2k-3 legs) with the given leg lengths.
template <typename T = Rational>
T shape_probability(int n, int k, const std::vector<int>& legs) {
  if (k < 2) throw ArgumentError("shape_probability: need at least two leaves");
  if (static_cast<int>(legs.size()) != 2 * k - 3) {
    throw ArgumentError("shape_probability: a binary shape with k leaves has 2k-3 legs");
  }
  long m = 0;
  for (int l : legs) {
    if (l < 1) throw ArgumentError("shape_probability: leg lengths must be positive");
    m += l;
  }
  if (m > n - 1) throw ArgumentError("shape_probability: total length exceeds n-1");
  // (n-k)! / (n-m-1)!
  T falling(1);
  for (long j = n - m; j <= n - k; ++j) falling *= T(j);
  return falling * T(m + 1) / detail::power(T(n), m);
}

/// E[deg(deg-1)...(deg-k+1)] for a fixed vertex.
template <typename T = Rational>
T degree_factorial_moment(int n, int k) {
  if (k < 1 || k > n - 1) throw ArgumentError("degree_factorial_moment: k must lie in [1, n-1]");
  T r(k + 1);
  for (int i = 1; i <= k; ++i) r *= T(1) - detail::ratio<T>(i, n);
  return r;
}

template <typename T>
struct LeafStatistics {
  T p_leaf;             // P(v is a leaf)
  T expected_fraction;  // E[#leaves / n]
  T cov_pair;           // Cov(1{u leaf}, 1{v leaf}), u != v
  T var_fraction;       // Var(#leaves / n)
};

template <typename T = Rational>
LeafStatistics<T> leaf_statistics(int n) {
  if (n < 3) throw ArgumentError("leaf_statistics: n must be at least 3");
  const T p = detail::power(T(1) - detail::ratio<T>(1, n), n - 2);
  const T both = detail::power(T(1) - detail::ratio<T>(2, n), n - 2);
  const T cov = both - p * p;
  const T var = p * (T(1) - p) / T(n) + detail::ratio<T>(n - 1, n) * cov;
  return {p, p, cov, var};
}

/// Labeled trees on 1..n in Pruefer-sequence order. n <= 9.
class TreeRange {
 public:
  explicit TreeRange(int n);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = SpanningTree;
    using difference_type = std::ptrdiff_t;
    using pointer = const SpanningTree*;
    using reference = const SpanningTree&;

    iterator() = default;
    reference operator*() const { return tree_; }
    pointer operator->() const { return &tree_; }
    iterator& operator++();
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || code_ == o.code_); }

   private:
    friend class TreeRange;
    iterator(int n, bool done);
    void decode();
    int n_ = 0;
    bool done_ = true;
    std::vector<int> code_;
    SpanningTree tree_;
  };

  iterator begin() const { return iterator(n_, false); }
  iterator end() const { return iterator(n_, true); }

 private:
  int n_;
};

inline TreeRange enumerate_trees(int n) { return TreeRange(n); }

/// Tree whose Pruefer code is `code` (length n-2, entries in 1..n).
SpanningTree prufer_decode(int n, const std::vector<int>& code);

/// Uniform spanning tree of K_n by Wilson's algorithm (root 1, walks started
/// from 2, 3, ..., n). Edges are returned as (v, parent(v)) normalized.
SpanningTree sample_wilson(int n, RandomState& rng);

/// Parent array of a Wilson tree rooted at 1 (parent[1] = 0). Cheaper than
/// building the edge list when only paths to the root are needed.
std::vector<int> sample_wilson_parents(int n, RandomState& rng);

/// Number of spanning trees of the simple graph on vertices 1..n with the
/// given edges (0 when disconnected). n <= 20.
BigInt kirchhoff_count(int n, const std::vector<std::pair<int, int>>& edges);

/// Edge list of K_n.
std::vector<std::pair<int, int>> complete_graph_edges(int n);

}  // namespace dpplab
