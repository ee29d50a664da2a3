#include <doctest.h>

#include <cmath>

#include "dpplab/lpp.hpp"
#include "dpplab/stats.hpp"
#include "oracles.hpp"

using namespace dpplab;

TEST_CASE("constant weights count path lengths") {
  RandomState rng(1);
  const PassageGrid g = sample_grid(4, 6, WeightKind::constant(1.0), rng);
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 6; ++j) CHECK(last_passage_time(g, i, j) == i + j - 1);
  }
  CHECK_THROWS_AS(last_passage_time(g, 0, 1), ArgumentError);
  CHECK_THROWS_AS(last_passage_time(g, 5, 1), ArgumentError);
}

TEST_CASE("recursion agrees with brute force over paths") {
  RandomState rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    const PassageGrid g = sample_grid(m, n, trial % 2 ? WeightKind::exponential(1.0) : WeightKind::geometric(0.5), rng);
    std::vector<std::vector<double>> w(m, std::vector<double>(n));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) w[i][j] = g.weights(i, j);
    }
    CHECK(last_passage_time(g, m, n) == doctest::Approx(oracle::lpp_all_paths(w)).epsilon(1e-14));
    CHECK(last_passage_time(g, 1, 1) == g.weights(0, 0));
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i > 1) CHECK(last_passage_time(g, i, j) >= last_passage_time(g, i - 1, j));
        if (j > 1) CHECK(last_passage_time(g, i, j) >= last_passage_time(g, i, j - 1));
      }
    }
  }
}

TEST_CASE("single row is a sum of weights") {
  RandomState rng(3);
  const int n = 5, draws = 20000;
  std::vector<double> xs;
  for (int i = 0; i < draws; ++i) xs.push_back(sample_corner(1, n, WeightKind::exponential(1.0), rng));
  CHECK(std::abs(mean(xs) - n) < 3 * std::sqrt(double(n) / draws));
  CHECK(ks_one_sample(xs, [&](double x) { return gamma_cdf(n, x); }) < 0.02);

  // Geometric(q) has mean q / (1 - q).
  xs.clear();
  const double q = 0.3;
  for (int i = 0; i < draws; ++i) xs.push_back(sample_corner(1, 1, WeightKind::geometric(q), rng));
  const double mu = q / (1 - q), var = q / ((1 - q) * (1 - q));
  CHECK(std::abs(mean(xs) - mu) < 4 * std::sqrt(var / draws));
  for (double x : xs) CHECK(x == std::floor(x));
}

TEST_CASE("corner sampler matches the full grid") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    RandomState a(s), b(s);
    const PassageGrid g = sample_grid(3, 7, WeightKind::exponential(2.0), a);
    CHECK(sample_corner(3, 7, WeightKind::exponential(2.0), b) == last_passage_time(g, 3, 7));
  }
  RandomState c(9), d(9);
  CHECK(sample_grid(3, 3, WeightKind::geometric(0.5), c).g == sample_grid(3, 3, WeightKind::geometric(0.5), d).g);
}

TEST_CASE("bridge shifts and argument checks") {
  CHECK(bridge_shift(WeightKind::geometric(0.5), 4) == 3);
  CHECK(bridge_shift(WeightKind::geometric(0.5), 1) == 0);
  CHECK(bridge_shift(WeightKind::exponential(), 4) == 0);
  CHECK_THROWS_AS(bridge_shift(WeightKind::exponential(), 0), ArgumentError);
  CHECK_THROWS_AS(WeightKind::geometric(1.0), ArgumentError);
  CHECK_THROWS_AS(WeightKind::exponential(0.0), ArgumentError);
  RandomState rng(1);
  CHECK_THROWS_AS(sample_grid(0, 2, WeightKind::exponential(), rng), ArgumentError);
}
