#pragma once

// Directed last-passage percolation on {1..m} x {1..n}:
//   G(i,j) = w(i,j) + max(G(i-1,j), G(i,j-1)).

#include <cstdint>

#include "dpplab/numerics.hpp"
#include "dpplab/random.hpp"

namespace dpplab {

/// Site weight law. Geometric(q) lives on {0,1,2,...} with pmf (1-q) q^k.
/// Constant is a degenerate law for tests.
struct WeightKind {
  enum class Type { Exponential, Geometric, Constant };
  Type type = Type::Exponential;
  double parameter = 1.0;  // rate, q, or the constant value

  static WeightKind exponential(double rate = 1.0);
  static WeightKind geometric(double q);
  static WeightKind constant(double value);

  double draw(RandomState& rng) const;
};

struct PassageGrid {
  int m = 0;
  int n = 0;
  WeightKind kind;
  RMatrix weights;  // w(i,j) at (i-1, j-1)
  RMatrix g;        // G(i,j) at (i-1, j-1)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Fills the grid row by row, one weight draw per site.
PassageGrid sample_grid(int m, int n, const WeightKind& kind, RandomState& rng);

/// G(i,j) with 1-based coordinates.
double last_passage_time(const PassageGrid& grid, int i, int j);

/// G(m,n) without storing the grid (O(n) memory).
double sample_corner(int m, int n, const WeightKind& kind, RandomState& rng);

/// Shift s with G(m,n) equal in law to (top particle of the matching
/// ensemble) - s: 0 for exponential weights, m-1 for geometric.
int bridge_shift(const WeightKind& kind, int m);

}  // namespace dpplab
