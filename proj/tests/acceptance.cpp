// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpplab/cli.hpp"
#include "dpplab/combinatorics.hpp"
#include "dpplab/dominance.hpp"
#include "dpplab/dpp.hpp"
#include "dpplab/ensembles.hpp"
#include "dpplab/io.hpp"
#include "dpplab/lpp.hpp"
#include "dpplab/stats.hpp"
#include "dpplab/ust.hpp"
#include "oracles.hpp"

using namespace dpplab;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::vector<std::vector<oracle::Cx>> rows_of(const ProjectionFrame& f) {
  std::vector<std::vector<oracle::Cx>> rows(static_cast<std::size_t>(f.rank()));
  for (int i = 0; i < f.rank(); ++i) {
    for (Index x = 0; x < f.rows.cols(); ++x) rows[i].push_back(f.rows(i, x));
  }
  return rows;
}

std::vector<double> weights_of(const GroundSpace& s) {
  return std::vector<double>(s.weights.data(), s.weights.data() + s.weights.size());
}

Rational frac(long a, long b) { return Rational(a) / Rational(b); }

// ------------------------------------------------------------------ 1

Verdict ust_exact_vs_enumeration() {
  Verdict v;
  std::size_t checks = 0;
  for (int n = 3; n <= 7; ++n) {
    const auto masks = oracle::spanning_tree_masks(n);
    const auto edges = oracle::complete_edges(n);

    // The Pruefer enumeration must produce exactly the trees found by the scan.
    std::set<std::uint64_t> from_prufer;
    for (const auto& t : enumerate_trees(n)) {
      std::uint64_t m = 0;
      for (const auto& [a, b] : t.edges) m |= std::uint64_t{1} << oracle::edge_index(n, a, b);
      from_prufer.insert(m);
    }
    v.require(from_prufer == std::set<std::uint64_t>(masks.begin(), masks.end()),
              "Pruefer trees differ from scan at n=" + std::to_string(n));

    const long total = static_cast<long>(masks.size());
    std::vector<long> dist(static_cast<std::size_t>(n), 0);
    std::vector<long> fall(4, 0);
    long leaf1 = 0, leaf12 = 0, leaves_sq = 0;
    std::map<std::vector<int>, long> shape3;
    for (auto m : masks) {
      const auto e = oracle::mask_edges(n, m);
      const auto d1 = oracle::distances(n, e, 1);
      const auto deg = oracle::degrees(n, e);
      ++dist[d1[2]];
      for (int k = 1; k <= 3; ++k) {
        long f = 1;
        for (int i = 0; i < k; ++i) f *= deg[1] - i;
        fall[k] += f;
      }
      leaf1 += deg[1] == 1;
      leaf12 += deg[1] == 1 && deg[2] == 1;
      long leaves = 0;
      for (int x = 1; x <= n; ++x) leaves += deg[x] == 1;
      leaves_sq += leaves * leaves;
      const auto d2 = oracle::distances(n, e, 2);
      const int a = d1[2], b = d1[3], c = d2[3];
      const std::vector<int> legs = {(a + b - c) / 2, (a + c - b) / 2, (b + c - a) / 2};
      ++shape3[legs];
    }
    const auto pmf = distance_pmf<Rational>(n);
    for (int k = 1; k <= n - 1; ++k, ++checks) {
      v.require(pmf[k - 1] == frac(dist[k], total), "distance pmf n=" + std::to_string(n));
      v.require(shape_probability<Rational>(n, 2, {k}) == frac(dist[k], total), "2-leaf shape n=" + std::to_string(n));
    }
    for (int k = 1; k <= std::min(3, n - 1); ++k, ++checks) {
      v.require(degree_factorial_moment<Rational>(n, k) == frac(fall[k], total),
                "degree moment n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    for (const auto& [legs, count] : shape3) {
      if (std::min({legs[0], legs[1], legs[2]}) < 1) continue;
      ++checks;
      // The formula counts one labeled shape; the three legs are distinguishable.
      v.require(shape_probability<Rational>(n, 3, legs) == frac(count, total), "3-leaf shape n=" + std::to_string(n));
    }
    const auto ls = leaf_statistics<Rational>(n);
    const Rational p = frac(leaf1, total);
    v.require(ls.p_leaf == p, "p_leaf");
    v.require(ls.expected_fraction == p, "expected_fraction");
    v.require(ls.cov_pair == frac(leaf12, total) - p * p, "cov_pair");
    v.require(ls.var_fraction == frac(leaves_sq, total * n * n) - p * p, "var_fraction");
    checks += 4;

    // Edge sets of size <= 3 with every split into forced-in and forced-out.
    const int ne = static_cast<int>(edges.size());
    for (int size = 1; size <= 3; ++size) {
      for_each_combination(ne, size, [&](const std::vector<int>& pick) {
        for (int split = 0; split < (1 << size); ++split) {
          std::uint64_t in_mask = 0, out_mask = 0;
          std::vector<OrientedEdge> in, out;
          for (int j = 0; j < size; ++j) {
            const auto& e = edges[pick[j]];
            if ((split >> j) & 1) {
              out_mask |= std::uint64_t{1} << pick[j];
              out.push_back({e.second, e.first});
            } else {
              in_mask |= std::uint64_t{1} << pick[j];
              in.push_back({e.first, e.second});
            }
          }
          long count = 0;
          for (auto m : masks) count += (m & in_mask) == in_mask && (m & out_mask) == 0;
          ++checks;
          if (subset_probability<Rational>(n, in, out) != frac(count, total)) {
            v.require(false, "subset probability n=" + std::to_string(n));
          }
        }
      });
    }
  }
  v.detail << checks << " exact comparisons, n=3..7";
  return v;
}

// ------------------------------------------------------------------ 2

Verdict ust_closed_forms() {
  Verdict v;
  for (int n = 3; n <= 9; ++n) {
    v.require(subset_probability<Rational>(n, {{1, 2}}, {}) == frac(2, n), "edge probability");
    v.require(transfer_current<Rational>(n, {1, 2}, {1, 2}) == frac(2, n), "transfer current diagonal");
    for (int k = 1; k <= n - 1; ++k) {
      std::vector<OrientedEdge> path;
      for (int i = 1; i <= k; ++i) path.push_back({i, i + 1});
      Rational expect = Rational(k + 1);
      for (int i = 0; i < k; ++i) expect /= n;
      v.require(subset_probability<Rational>(n, path, {}) == expect, "path probability");
    }
    const auto pmf = distance_pmf<Rational>(n);
    for (int k = 1; k <= n - 1; ++k) {
      Rational f = frac(k + 1, n);
      for (int i = 1; i <= k - 1; ++i) f *= Rational(1) - frac(i + 1, n);
      v.require(pmf[k - 1] == f, "distance formula");
    }
  }
  // n = 4 numbers, compared with enumeration.
  const auto masks = oracle::spanning_tree_masks(4);
  long leaf = 0;
  for (auto m : masks) leaf += oracle::degrees(4, oracle::mask_edges(4, m))[1] == 1;
  v.require(frac(leaf, static_cast<long>(masks.size())) == frac(9, 16), "enumerated leaf probability");
  v.require(leaf_statistics<Rational>(4).p_leaf == frac(9, 16), "p_leaf(4) = 9/16");
  const Rational star = subset_probability<Rational>(4, {}, {{1, 3}, {1, 4}});
  v.require(star == frac(3, 16) && 3 * star == frac(9, 16), "leaf via excluded edges");
  v.require(leaf_statistics<Rational>(4).cov_pair == frac(-17, 256), "cov_pair(4)");
  v.require(leaf_statistics<double>(4).cov_pair == -0.06640625, "cov_pair(4) in floating point");
  v.detail << "2/n, (k+1)/n^k, distance formula for n=3..9; 9/16 and -0.06640625 at n=4";
  return v;
}

// ------------------------------------------------------------------ 3

Verdict kirchhoff() {
  Verdict v;
  for (int n = 2; n <= 8; ++n) {
    BigInt expect = 1;
    for (int i = 0; i < n - 2; ++i) expect *= n;
    v.require(kirchhoff_count(n, complete_graph_edges(n)) == expect, "K_" + std::to_string(n));
  }
  for (int n = 3; n <= 10; ++n) {
    std::vector<std::pair<int, int>> path, cycle;
    for (int i = 1; i < n; ++i) path.emplace_back(i, i + 1);
    cycle = path;
    cycle.emplace_back(n, 1);
    v.require(kirchhoff_count(n, path) == 1, "path");
    v.require(kirchhoff_count(n, cycle) == n, "cycle");
  }
  v.detail << "K_2..K_8 give n^(n-2); paths give 1, cycles give n";
  return v;
}

// ------------------------------------------------------------------ 4

Verdict wilson_uniform() {
  Verdict v;
  const int n = 4;
  const std::size_t draws = 160000;
  std::map<std::vector<std::pair<int, int>>, double> counts;
  for (const auto& t : enumerate_trees(n)) counts[t.edges] = 0.0;
  RandomState rng(kDefaultSeed);
  for (std::size_t i = 0; i < draws; ++i) {
    const auto t = sample_wilson(n, rng);
    const auto it = counts.find(t.edges);
    if (it == counts.end()) {
      v.require(false, "sampled a non-tree");
      return v;
    }
    it->second += 1.0;
  }
  std::vector<double> observed, expected;
  for (const auto& [t, c] : counts) {
    observed.push_back(c);
    expected.push_back(static_cast<double>(draws) / counts.size());
  }
  const double chi2 = chi_square_statistic(observed, expected);
  const double q = chi_square_quantile(15, 0.999);
  v.require(counts.size() == 16, "16 trees");
  v.require(chi2 < q, "chi-square too large");
  v.detail << "chi2 = " << chi2 << " vs " << q;
  return v;
}

// ------------------------------------------------------------------ 5

int depth_of(const std::vector<int>& parent, int x) {
  int d = 0;
  while (parent[x] != 0) {
    x = parent[x];
    ++d;
  }
  return d;
}

Verdict scaling_limits() {
  Verdict v;
  {
    const int n = 10000;
    const std::size_t draws = 10000;
    RandomState rng = derive_substream(kDefaultSeed, 51);
    std::vector<double> xs;
    xs.reserve(draws);
    for (std::size_t i = 0; i < draws; ++i) {
      const auto parent = sample_wilson_parents(n, rng);
      xs.push_back(depth_of(parent, 2) / std::sqrt(double(n)));
    }
    const double ks = ks_one_sample(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x * x / 2); });
    v.require(ks < 0.02, "Rayleigh KS");
    v.detail << "Rayleigh KS " << ks;
  }
  {
    const int n = 1000;
    const std::size_t draws = 100000;
    RandomState rng = derive_substream(kDefaultSeed, 52);
    std::vector<double> emp(40, 0.0);
    for (std::size_t i = 0; i < draws; ++i) {
      const auto parent = sample_wilson_parents(n, rng);
      int deg = 0;
      for (int x = 2; x <= n; ++x) deg += parent[x] == 1;
      emp[std::min(deg, 39)] += 1.0 / draws;
    }
    std::vector<double> lim(40, 0.0);
    double fact = 1.0;
    for (int d = 1; d < 40; ++d) {
      if (d > 1) fact *= d - 1;
      lim[d] = std::exp(-1.0) / fact;
    }
    const double tv = total_variation(emp, lim);
    v.require(tv < 0.05, "degree TV");
    v.detail << ", degree TV " << tv;
  }
  {
    const int n = 1000;
    const std::size_t draws = 10000;
    RandomState rng = derive_substream(kDefaultSeed, 53);
    double sum = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const auto parent = sample_wilson_parents(n, rng);
      std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
      for (int x = 1; x <= n; ++x) {
        if (parent[x] != 0) {
          ++deg[x];
          ++deg[parent[x]];
        }
      }
      sum += double(std::count(deg.begin() + 1, deg.end(), 1)) / n;
    }
    const double gap = std::abs(sum / draws - std::exp(-1.0));
    v.require(gap < 0.01, "leaf fraction");
    v.detail << ", leaf fraction gap " << gap;
  }
  return v;
}

// ------------------------------------------------------------------ 6

Verdict lyons_exact() {
  Verdict v;
  double worst_flow = 2.0, worst_family = 0.0, worst_oracle = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int ground = 4 + t % 2;
    const int n = 1 + (t / 2) % 2;
    RandomState rng = derive_substream(kDefaultSeed, 600 + t);
    const ProjectionFrame frame = random_frame(ground, n + 1, rng);
    const LyonsReport r = verify_lyons(frame);
    v.require(r.flow_feasible && r.flow_value >= 1 - 1e-9, "flow");
    worst_flow = std::min(worst_flow, r.flow_value);
    const bool small = binomial(ground, n) <= 12;
    if (small) {
      v.require(r.exhaustive && r.family_margin >= -1e-10, "family margin");
      worst_family = std::min(worst_family, r.family_margin);
    }
    const auto lower = oracle::projection_law(rows_of(frame.leading(n)), weights_of(frame.space));
    const auto upper = oracle::projection_law(rows_of(frame), weights_of(frame.space));
    const double m = oracle::family_margin(lower, upper);
    v.require(m >= -1e-10, "independent family margin");
    worst_oracle = std::min(worst_oracle, m);
  }
  v.detail << "min flow " << worst_flow << ", min family margin " << worst_family << ", brute force "
           << worst_oracle;
  return v;
}

// ------------------------------------------------------------------ 7

Verdict biorthogonal_counterexample_check() {
  Verdict v;
  const auto d = biorthogonal_counterexample();
  const auto l1 = biorthogonal_exact_law(d.phis.topRows(1), d.psis.topRows(1), d.space).law;
  const auto l2 = biorthogonal_exact_law(d.phis, d.psis, d.space).law;
  v.require(l1.probability({0}) == 1.0 && l1.probability({1}) == 0.0 && l1.probability({2}) == 0.0, "P1");
  v.require(l2.probability({1, 2}) == 1.0 && l2.probability({0, 1}) == 0.0 && l2.probability({0, 2}) == 0.0, "P2");
  const ContainmentPoset cp = containment_poset(3, 1);
  const int size = cp.poset.size();
  MeasurePair pair{RVector::Zero(size), RVector::Zero(size)};
  for (int i = 0; i < size; ++i) {
    if (i < cp.lower_count) pair.p1(i) = l1.probability(cp.subsets[i]);
    else pair.p2(i) = l2.probability(cp.subsets[i]);
  }
  const auto c = strassen_flow(cp.poset, pair);
  v.require(!c.feasible, "flow should be infeasible");
  std::set<Configuration> witness;
  for (int i : c.witness) witness.insert(cp.subsets[i]);
  v.require(witness == std::set<Configuration>{{0}, {0, 1}, {0, 2}}, "witness {a},{a,b},{a,c}");
  v.require(cp.poset.is_upset(c.witness), "witness is an upset");
  double gap = 0.0;
  for (int i : c.witness) gap += pair.p1(i) - pair.p2(i);
  v.require(gap == 1.0, "witness separates by 1");
  const auto e = dominance_exact(cp.poset, pair, DominanceMethod::Enumerate);
  v.require(!e.dominated && e.margin == -1.0, "enumeration agrees");
  v.detail << "P1({a})=1, P2({b,c})=1, flow " << c.flow_value << ", witness {a},{a,b},{a,c}";
  return v;
}

// ------------------------------------------------------------------ 8

Verdict identities() {
  Verdict v;
  double discrete = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int ground = 3 + t % 4;
    const int rank = 2 + (t / 4) % 2;
    RandomState rng = derive_substream(kDefaultSeed, 800 + t);
    const ProjectionFrame frame = random_frame(ground, std::min(rank, ground - 1), rng);
    for_each_combination(ground, frame.rank() - 1, [&](const Configuration& a) {
      discrete = std::max(discrete, detequality_discrete(frame, a));
    });
  }
  v.require(discrete < 1e-12, "discrete identity");

  double worst_eig = 1.0, worst_fact = 0.0;
  RandomState rng = derive_substream(kDefaultSeed, 850);
  for (int t = 0; t < 50; ++t) {
    const int ground = 4 + t % 2;
    const int n = 1 + (t / 2) % 2;
    CVector phi(ground);
    for (auto& x : phi) x = Complex(rng.normal(), rng.normal());
    const std::uint64_t salt = rng();
    const SignFunction eps = [salt](int x, const Configuration& a) {
      std::uint64_t h = splitmix64(salt ^ static_cast<std::uint64_t>(x));
      for (int y : a) h = splitmix64(h ^ static_cast<std::uint64_t>(y + 101));
      return (h & 1u) ? -1 : 1;
    };
    std::vector<Configuration> family;
    for (const auto& a : combinations(ground, n)) {
      if (rng.uniform() < 0.5) family.push_back(a);
    }
    if (family.empty()) family.push_back(combinations(ground, n).front());
    const auto r = positivity_check(ground, phi, eps, family);
    worst_eig = std::min(worst_eig, r.min_eigenvalue);
    worst_fact = std::max(worst_fact, r.factorization_error);
  }
  v.require(worst_eig >= -1e-10, "positivity");
  v.require(worst_fact < 1e-10, "factorization");

  const QuadratureRule rule = gauss_laguerre(64);
  double continuous = 0.0;
  RandomState prng = derive_substream(kDefaultSeed, 860);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 0; t < 10; ++t) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& y : x) y = 4.0 * prng.uniform();
      continuous = std::max(continuous, detequality_continuous(n, rule, x));
    }
  }
  v.require(continuous < 1e-8, "continuous identity");
  v.detail << "discrete " << discrete << ", min eigenvalue " << worst_eig << ", continuous " << continuous;
  return v;
}

// ------------------------------------------------------------------ 9

Verdict vandermonde() {
  Verdict v;
  int runs = 0;
  double worst = 0.0;
  for (double q : {0.3, 0.5}) {
    for (int n = 1; n <= 2; ++n) {
      std::vector<ConfigFunction> hs = {meixner_ratio_h};
      RandomState rng = derive_substream(kDefaultSeed, 900 + 10 * n + static_cast<int>(q * 10));
      for (int i = 0; i < 5; ++i) hs.push_back(random_monotone_function(n, 10, rng));
      for (const auto& h : hs) {
        const auto r = verify_vandermonde(VandermondeWeight::geometric(q), h, n, 10);
        v.require(r.feasible, "vandermonde flow");
        worst = std::min(worst, r.margin);
        ++runs;
      }
    }
  }
  const FinitePoset poset({"a", "b", "c"}, {{0, 1}, {0, 2}});
  RVector mu(3), muf(3);
  mu << 1.0 / 3, 1.0 / 3, 1.0 / 3;
  muf << 1.0 / 9, 1.0 / 6, 13.0 / 18;
  const MeasurePair pair{mu, muf};
  for (auto method : {DominanceMethod::Enumerate, DominanceMethod::Flow}) {
    const auto r = dominance_exact(poset, pair, method);
    v.require(!r.dominated, "poset counterexample accepted");
    v.require(std::abs(r.margin + 1.0 / 6) < 1e-12, "margin -1/6");
    v.require(r.witness == std::vector<int>{1}, "witness {b}");
  }
  const double brute = oracle::upset_margin(3, [&](int a, int b) { return poset.leq(a, b); },
                                            {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 9, 1.0 / 6, 13.0 / 18});
  v.require(std::abs(brute + 1.0 / 6) < 1e-12, "brute-force margin");
  v.detail << runs << " feasible flows (min margin " << worst << "); counterexample rejected at {b}, -1/6";
  return v;
}

// ------------------------------------------------------------------ 10

std::vector<double> draw_n(std::size_t count, std::uint64_t stream, const std::function<double(RandomState&)>& f) {
  RandomState rng = derive_substream(kDefaultSeed, stream);
  std::vector<double> out(count);
  for (auto& x : out) x = f(rng);
  return out;
}

Verdict bridges() {
  Verdict v;
  {
    const EnsembleSpec spec = EnsembleSpec::wishart(1, 3);
    const auto xs = draw_n(100000, 1000, [&](RandomState& rng) { return sample_top(spec, rng); });
    const double ks = ks_one_sample(xs, [](double x) { return gamma_cdf(3.0, x); });
    v.require(ks < 0.01, "W(1,3) vs Gamma(3)");
    v.detail << "Gamma KS " << ks;
  }
  const std::size_t draws = 20000;
  const double crit = ks_two_sample_critical(draws, draws, 0.001);
  std::uint64_t stream = 1010;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 4}}) {
    const EnsembleSampler sampler(EnsembleSpec::wishart(m, n));
    const auto kind = WeightKind::exponential(1.0);
    const auto a = draw_n(draws, stream++, [&](RandomState& rng) { return sample_corner(m, n, kind, rng); });
    const auto b = draw_n(draws, stream++, [&](RandomState& rng) { return sampler.draw(rng).back(); });
    const double ks = ks_two_sample(a, b);
    v.require(ks < crit, "exponential bridge");
    v.detail << ", exp(" << m << "," << n << ") " << ks;
  }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 4}}) {
    const EnsembleSampler sampler(EnsembleSpec::meixner(m, n, 0.5));
    const auto kind = WeightKind::geometric(0.5);
    const double shift = bridge_shift(kind, m);
    const auto a = draw_n(draws, stream++, [&](RandomState& rng) { return sample_corner(m, n, kind, rng); });
    const auto b = draw_n(draws, stream++, [&](RandomState& rng) { return sampler.draw(rng).back() - shift; });
    const double ks = ks_two_sample(a, b);
    v.require(ks < crit, "geometric bridge");
    v.detail << ", geom(" << m << "," << n << ") " << ks;
  }
  v.detail << " (critical " << crit << ")";
  return v;
}

// ------------------------------------------------------------------ 11

Verdict dominance_corollaries() {
  Verdict v;
  const std::size_t draws = 100000;
  auto tops = [&](const EnsembleSpec& spec, std::uint64_t stream) {
    const EnsembleSampler s(spec);
    return draw_n(draws, stream, [&](RandomState& rng) { return s.draw(rng).back(); });
  };
  const auto w1 = empirical_dominance(tops(EnsembleSpec::wishart(4, 6), 1100), tops(EnsembleSpec::wishart(5, 5), 1101), 0.01);
  v.require(w1.verdict == EmpiricalVerdict::Dominates, "W(4,6) < W(5,5)");
  const auto j1 = empirical_dominance(tops(EnsembleSpec::jacobi(5, 3, 2), 1102), tops(EnsembleSpec::jacobi(4, 4, 3), 1103), 0.01);
  v.require(j1.verdict == EmpiricalVerdict::Dominates, "J(5,3,2) < J(4,4,3)");

  // Particles h with weight q^h on {0..10}: span{x} against span{x, 1}.
  const double q = 0.5;
  std::vector<double> pts;
  RVector w(11);
  for (int h = 0; h <= 10; ++h) {
    pts.push_back(h);
    w(h) = std::pow(q, h);
  }
  const GroundSpace space(pts, w);
  const LyonsReport containment = verify_lyons(monomial_frame(space, {1, 0}));
  v.require(containment.passed, "span{x} below span{x,1} under q^h");

  std::vector<double> masses;
  for (int h = 0; h <= 10; ++h) masses.push_back((h + 1.0) * (h + 2.0) * std::pow(q, h));
  const auto reweighted = verify_vandermonde(VandermondeWeight::custom(masses), meixner_ratio_h, 1, 10);
  v.require(reweighted.feasible, "(h+1)(h+2)q^h reweighted by the Meixner ratio");
  v.detail << "Wishart d12-d21 " << w1.margin << " (band " << w1.band << "), Jacobi " << j1.margin << " (band "
           << j1.band << "); Meixner margins " << containment.margin << ", " << reweighted.margin;
  return v;
}

// ------------------------------------------------------------------ 12

Verdict projection_sampler() {
  Verdict v;
  RandomState setup = derive_substream(kDefaultSeed, 1200);
  const ProjectionFrame frame = random_frame(4, 2, setup);
  const ExactLaw law = projection_exact_law(frame);
  const auto brute = oracle::projection_law(rows_of(frame), weights_of(frame.space));
  for (const auto& [a, p] : brute) v.require(std::abs(law.probability(a) - p) < 1e-12, "exact law vs minors");
  const std::size_t draws = 1000000;
  RandomState rng = derive_substream(kDefaultSeed, 1201);
  std::map<Configuration, double> counts;
  bool sizes = true;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto c = sample_projection(frame, rng);
    sizes = sizes && c.size() == 2;
    counts[c] += 1.0 / draws;
  }
  std::vector<double> emp, exact;
  for (const auto& [a, p] : law.probabilities) {
    emp.push_back(counts.count(a) ? counts[a] : 0.0);
    exact.push_back(p);
  }
  const double tv = total_variation(emp, exact);
  v.require(sizes, "every draw has rank points");
  v.require(counts.size() <= law.probabilities.size(), "draws outside the support");
  v.require(tv < 0.01, "total variation");
  v.detail << "TV " << tv << " over " << draws << " draws";
  return v;
}

// ------------------------------------------------------------------ 13

std::pair<int, std::string> run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str()};
}

Verdict determinism() {
  Verdict v;
  const std::vector<std::vector<std::string>> commands = {
      {"--seed", "42", "ust", "sample", "--n", "60", "--samples", "300", "--stat", "distance"},
      {"--seed", "42", "dpp", "sample", "--ground", "5", "--rank", "2", "--samples", "500"},
      {"--seed", "42", "lpp", "sample", "--m", "3", "--n", "4", "--samples", "400"},
      {"--seed", "42", "ensemble", "sample", "--kind", "meixner", "--m", "2", "--n", "3", "--samples", "50"},
      {"--seed", "42", "dominate", "lyons", "--ground", "4", "--rank", "1", "--trials", "5"},
  };
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    v.require(a.first == 0 && a == b, "repeat of '" + c[2] + " " + c[3] + "'");
  }
  auto with = [](std::vector<std::string> base, const std::vector<std::string>& extra) {
    base.insert(base.begin(), extra.begin(), extra.end());
    return base;
  };
  const auto serial = run(with(commands[2], {"--replicas", "4", "--jobs", "1"}));
  const auto parallel = run(with(commands[2], {"--replicas", "4", "--jobs", "4"}));
  v.require(serial.first == 0 && serial == parallel, "jobs do not change replicated output");

  auto draw = [](RandomState& rng, std::size_t count) {
    std::vector<double> xs(count);
    for (auto& x : xs) x = rng.exponential();
    return xs;
  };
  auto parts = run_replicas(7, 5, 1, 1003, draw);
  const auto parts_parallel = run_replicas(7, 5, 3, 1003, draw);
  v.require(parts == parts_parallel, "replicas independent of jobs");
  const auto merged = merge_replicas(parts);
  std::reverse(parts.begin(), parts.end());
  v.require(merged == merge_replicas(parts), "merge order");
  v.require(merged.size() == 1003, "replica sizes");

  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 10000; ++i) firsts.insert(derive_substream(kDefaultSeed, i)());
  v.require(firsts.size() == 10000, "substream collision");
  v.detail << commands.size() << " commands repeat byte for byte; replica merge is order free";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*check)();
  };
  const Criterion criteria[] = {
      {"UST closed forms match enumeration", ust_exact_vs_enumeration},
      {"UST reference numbers", ust_closed_forms},
      {"Kirchhoff counts", kirchhoff},
      {"Wilson uniformity", wilson_uniform},
      {"UST scaling limits", scaling_limits},
      {"Lyons exact verification", lyons_exact},
      {"Biorthogonal counterexample", biorthogonal_counterexample_check},
      {"Determinant identities and positivity", identities},
      {"Vandermonde domination", vandermonde},
      {"Ensemble bridges", bridges},
      {"Dominance corollaries", dominance_corollaries},
      {"Projection sampler", projection_sampler},
      {"Determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("%s %2d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", index, c.name, v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
