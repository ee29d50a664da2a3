#include "dpplab/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace dpplab {

WeightKind WeightKind::exponential(double rate) {
  if (!(rate > 0.0)) throw ArgumentError("exponential weights need a positive rate");
  return {Type::Exponential, rate};
}

WeightKind WeightKind::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ArgumentError("geometric weights need 0 < q < 1");
  return {Type::Geometric, q};
}

WeightKind WeightKind::constant(double value) { return {Type::Constant, value}; }

double WeightKind::draw(RandomState& rng) const {
  switch (type) {
    case Type::Exponential:
      return rng.exponential(parameter);
    case Type::Geometric: {
      // Number of failures before the first success, success probability 1-q.
      std::geometric_distribution<long> d(1.0 - parameter);
      return static_cast<double>(d(rng));
    }
    case Type::Constant:
      return parameter;
  }
  return 0.0;
}

PassageGrid sample_grid(int m, int n, const WeightKind& kind, RandomState& rng) {
  if (m < 1 || n < 1) throw ArgumentError("sample_grid: m and n must be positive");
  PassageGrid grid;
  grid.m = m;
  grid.n = n;
  grid.kind = kind;
  grid.seed = rng.seed();
  grid.stream = rng.stream();
  grid.weights.resize(m, n);
  grid.g.resize(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = kind.draw(rng);
      grid.weights(i, j) = w;
      double best = 0.0;
      if (i > 0 && j > 0) {
        best = std::max(grid.g(i - 1, j), grid.g(i, j - 1));
      } else if (i > 0) {
        best = grid.g(i - 1, j);
      } else if (j > 0) {
        best = grid.g(i, j - 1);
      }
      grid.g(i, j) = w + best;
    }
  }
  return grid;
}

double last_passage_time(const PassageGrid& grid, int i, int j) {
  if (i < 1 || i > grid.m || j < 1 || j > grid.n) {
    throw ArgumentError("last_passage_time: (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is outside the grid");
  }
  return grid.g(i - 1, j - 1);
}

double sample_corner(int m, int n, const WeightKind& kind, RandomState& rng) {
  if (m < 1 || n < 1) throw ArgumentError("sample_corner: m and n must be positive");
  // Same draw order as sample_grid, so the corner matches the full grid.
  std::vector<double> row(n, 0.0);
  for (int i = 0; i < m; ++i) {
    double left = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = kind.draw(rng);
      double best = 0.0;
      if (i > 0 && j > 0) {
        best = std::max(row[j], left);
      } else if (i > 0) {
        best = row[j];
      } else if (j > 0) {
        best = left;
      }
      row[j] = left = w + best;
    }
  }
  return row[n - 1];
}

int bridge_shift(const WeightKind& kind, int m) {
  if (m < 1) throw ArgumentError("bridge_shift: m must be positive");
  return kind.type == WeightKind::Type::Geometric ? m - 1 : 0;
}

}  // namespace dpplab
