#include "dpplab/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dpplab/combinatorics.hpp"
#include "dpplab/ensembles.hpp"
#include "dpplab/flow.hpp"
#include "dpplab/stats.hpp"

namespace dpplab {

namespace {

constexpr double kScale = 1099511627776.0;  // 2^40
constexpr std::int64_t kInfinite = std::int64_t{1} << 62;

std::string join_labels(const Configuration& c, const GroundSpace* space) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << '-';
    if (space) {
      os << space->label(c[i]);
    } else {
      os << c[i] + 1;
    }
  }
  return c.empty() ? std::string("{}") : os.str();
}

double mass_of(const RVector& p, const std::vector<int>& set) {
  double s = 0.0;
  for (int i : set) s += p(i);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- posets

FinitePoset::FinitePoset(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& less)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)),
      le_(static_cast<std::size_t>(n_) * n_, 0) {
  for (int i = 0; i < n_; ++i) le_[static_cast<std::size_t>(i) * n_ + i] = 1;
  for (const auto& [a, b] : less) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) throw ArgumentError("FinitePoset: element out of range");
    if (a == b) throw ArgumentError("FinitePoset: strict relation cannot relate an element to itself");
    le_[static_cast<std::size_t>(a) * n_ + b] = 1;
  }
  close_and_check();
}

void FinitePoset::close_and_check() {
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      if (!leq(i, k)) continue;
      for (int j = 0; j < n_; ++j) {
        if (leq(k, j)) le_[static_cast<std::size_t>(i) * n_ + j] = 1;
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (leq(i, j) && leq(j, i)) {
        throw ArgumentError("FinitePoset: relation has a cycle through " + labels_[i] + " and " +
                            labels_[j]);
      }
    }
  }
}

FinitePoset FinitePoset::from_comparator(std::vector<std::string> labels,
                                         const std::function<bool(int, int)>& leq) {
  FinitePoset p;
  p.n_ = static_cast<int>(labels.size());
  p.labels_ = std::move(labels);
  p.le_.assign(static_cast<std::size_t>(p.n_) * p.n_, 0);
  for (int i = 0; i < p.n_; ++i) {
    for (int j = 0; j < p.n_; ++j) p.le_[static_cast<std::size_t>(i) * p.n_ + j] = (i == j) || leq(i, j);
  }
  for (int i = 0; i < p.n_; ++i) {
    for (int j = i + 1; j < p.n_; ++j) {
      if (p.leq(i, j) && p.leq(j, i)) throw ArgumentError("FinitePoset: comparator is not antisymmetric");
    }
  }
  return p;
}

FinitePoset FinitePoset::chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> less;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i) less.emplace_back(i - 1, i);
  }
  return FinitePoset(std::move(labels), less);
}

FinitePoset FinitePoset::antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinitePoset(std::move(labels), {});
}

std::vector<int> FinitePoset::up_closure(const std::vector<int>& elements) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    for (int i : elements) {
      if (leq(i, j)) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

bool FinitePoset::is_upset(const std::vector<int>& elements) const {
  std::vector<char> in(n_, 0);
  for (int i : elements) in.at(i) = 1;
  for (int i : elements) {
    for (int j = 0; j < n_; ++j) {
      if (leq(i, j) && !in[j]) return false;
    }
  }
  return true;
}

void MeasurePair::validate(const FinitePoset& poset) const {
  for (const RVector* p : {&p1, &p2}) {
    if (p->size() != poset.size()) throw ArgumentError("MeasurePair: vector length differs from poset size");
    if ((p->array() < -1e-12).any()) throw ArgumentError("MeasurePair: negative mass");
    if (std::abs(p->sum() - 1.0) > 1e-10) throw ArgumentError("MeasurePair: masses must sum to 1");
  }
}

// ---------------------------------------------------------------- upsets

void for_each_upset(const FinitePoset& poset, const std::function<void(std::uint32_t)>& f) {
  const int n = poset.size();
  if (n > 25) throw SizeError("upset_enumerate: more than 25 elements; use strassen_flow");
  // Linear extension by down-set size; elements are decided from the top.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> below(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) below[i] += poset.leq(j, i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] > below[b]; });
  std::vector<std::uint32_t> above(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && poset.leq(i, j)) above[i] |= std::uint32_t{1} << j;
    }
  }
  std::function<void(int, std::uint32_t)> rec = [&](int k, std::uint32_t mask) {
    if (k == n) {
      f(mask);
      return;
    }
    const int e = order[k];
    rec(k + 1, mask);
    if ((above[e] & mask) == above[e]) rec(k + 1, mask | (std::uint32_t{1} << e));
  };
  rec(0, 0);
}

std::vector<std::vector<int>> upset_enumerate(const FinitePoset& poset) {
  std::vector<std::vector<int>> out;
  for_each_upset(poset, [&](std::uint32_t mask) {
    std::vector<int> s;
    for (int i = 0; i < poset.size(); ++i) {
      if (mask >> i & 1U) s.push_back(i);
    }
    out.push_back(std::move(s));
  });
  return out;
}

// ---------------------------------------------------------------- exact dominance

CouplingResult strassen_flow(const FinitePoset& poset, const MeasurePair& pair) {
  pair.validate(poset);
  const int n = poset.size();
  std::size_t comparable = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) comparable += poset.leq(i, j);
  }
  if (comparable > 10'000'000) throw SizeError("strassen_flow: more than 10^7 comparable pairs");

  const int source = 0, sink = 2 * n + 1;
  MaxFlow net(2 * n + 2);
  auto scaled = [](double p) { return static_cast<std::int64_t>(std::llround(std::max(p, 0.0) * kScale)); };
  std::vector<std::pair<int, std::pair<int, int>>> middle;
  for (int i = 0; i < n; ++i) {
    net.add_edge(source, 1 + i, scaled(pair.p1(i)));
    net.add_edge(1 + n + i, sink, scaled(pair.p2(i)));
  }
  for (int i = 0; i < n; ++i) {
    if (pair.p1(i) <= 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (poset.leq(i, j) && pair.p2(j) > 0.0) {
        middle.push_back({net.add_edge(1 + i, 1 + n + j, kInfinite), {i, j}});
      }
    }
  }
  const std::int64_t flow = net.run(source, sink);

  CouplingResult result;
  result.flow_value = static_cast<double>(flow) / kScale;
  result.feasible = result.flow_value >= 1.0 - 1e-9;
  if (result.feasible) {
    for (const auto& [edge, ij] : middle) {
      const std::int64_t f = net.flow_on(edge);
      if (f > 0) result.coupling[ij] = static_cast<double>(f) / kScale;
    }
  } else {
    const std::vector<char> seen = net.reachable(source);
    std::vector<int> left;
    for (int i = 0; i < n; ++i) {
      if (seen[1 + i]) left.push_back(i);
    }
    result.witness = poset.up_closure(left);
  }
  return result;
}

DominanceResult dominance_exact(const FinitePoset& poset, const MeasurePair& pair, DominanceMethod method) {
  pair.validate(poset);
  DominanceResult r;
  if (method == DominanceMethod::Enumerate) {
    double best = 0.0;
    std::uint32_t arg = 0;
    for_each_upset(poset, [&](std::uint32_t mask) {
      double d = 0.0;
      for (int i = 0; i < poset.size(); ++i) {
        if (mask >> i & 1U) d += pair.p2(i) - pair.p1(i);
      }
      if (d < best) {
        best = d;
        arg = mask;
      }
    });
    r.margin = best;
    for (int i = 0; i < poset.size(); ++i) {
      if (arg >> i & 1U) r.witness.push_back(i);
    }
  } else {
    CouplingResult c = strassen_flow(poset, pair);
    if (!c.witness.empty()) {
      r.witness = std::move(c.witness);
      r.margin = mass_of(pair.p2, r.witness) - mass_of(pair.p1, r.witness);
    } else {
      r.margin = std::min(0.0, c.flow_value - 1.0);
    }
  }
  r.dominated = r.margin >= -1e-10;
  if (r.dominated && r.margin >= 0.0) r.witness.clear();
  return r;
}

// ---------------------------------------------------------------- Lyons

ContainmentPoset containment_poset(int ground, int n, const GroundSpace* space) {
  std::vector<Configuration> subsets = combinations(ground, n);
  const int lower = static_cast<int>(subsets.size());
  for (auto& s : combinations(ground, n + 1)) subsets.push_back(std::move(s));
  std::vector<std::string> labels;
  for (const auto& s : subsets) labels.push_back(join_labels(s, space));
  FinitePoset poset = FinitePoset::from_comparator(std::move(labels), [&](int i, int j) {
    if (i >= lower || j < lower) return false;
    return std::includes(subsets[j].begin(), subsets[j].end(), subsets[i].begin(), subsets[i].end());
  });
  return ContainmentPoset{std::move(poset), std::move(subsets), lower};
}

LyonsReport verify_lyons(const ProjectionFrame& frame, std::size_t family_cap_log2) {
  const int ground = frame.space.size();
  const int n = frame.rank() - 1;
  if (n < 0) throw PreconditionError("verify_lyons: need at least one function");
  if (frame.orthonormality_defect() > 1e-8) throw PreconditionError("verify_lyons: functions are not orthonormal");
  LyonsReport rep;
  rep.ground = ground;
  rep.rank = n;

  const ExactLaw p1 = projection_exact_law(frame.leading(n));
  const ExactLaw p2 = projection_exact_law(frame);
  const ContainmentPoset cp = containment_poset(ground, n, &frame.space);
  const int total = cp.poset.size();
  MeasurePair pair{RVector::Zero(total), RVector::Zero(total)};
  for (int i = 0; i < total; ++i) {
    if (i < cp.lower_count) {
      pair.p1(i) = std::max(0.0, p1.probability(cp.subsets[i]));
    } else {
      pair.p2(i) = std::max(0.0, p2.probability(cp.subsets[i]));
    }
  }
  pair.p1 /= pair.p1.sum();
  pair.p2 /= pair.p2.sum();
  const CouplingResult flow = strassen_flow(cp.poset, pair);
  rep.flow_feasible = flow.feasible;
  rep.flow_value = flow.flow_value;
  rep.margin = std::min(0.0, flow.flow_value - 1.0);

  const std::size_t lower = static_cast<std::size_t>(cp.lower_count);
  if (lower <= family_cap_log2 && lower < 63) {
    rep.exhaustive = true;
    rep.family_margin = 0.0;
    std::vector<char> in_b(total, 0);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << lower); ++mask) {
      std::fill(in_b.begin(), in_b.end(), 0);
      double pa = 0.0;
      for (std::size_t a = 0; a < lower; ++a) {
        if (!(mask >> a & 1U)) continue;
        pa += pair.p1(static_cast<Index>(a));
        for (int b = cp.lower_count; b < total; ++b) {
          if (cp.poset.leq(static_cast<int>(a), b)) in_b[b] = 1;
        }
      }
      double pb = 0.0;
      for (int b = cp.lower_count; b < total; ++b) {
        if (in_b[b]) pb += pair.p2(b);
      }
      rep.family_margin = std::min(rep.family_margin, pb - pa);
      ++rep.families;
    }
    ++rep.families;  // the empty family
    rep.margin = std::min(rep.margin, rep.family_margin);
  }
  rep.passed = rep.flow_feasible && (!rep.exhaustive || rep.family_margin >= -1e-10);
  return rep;
}

// ---------------------------------------------------------------- Vandermonde

VandermondeWeight VandermondeWeight::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ArgumentError("geometric weight needs 0 < q < 1");
  return {Type::Geometric, q, {}};
}

VandermondeWeight VandermondeWeight::exponential_grid(double rate) {
  if (!(rate > 0.0)) throw ArgumentError("exponential weight needs a positive rate");
  return {Type::ExponentialGrid, rate, {}};
}

VandermondeWeight VandermondeWeight::custom(std::vector<double> masses) {
  for (double m : masses) {
    if (!(m >= 0.0)) throw ArgumentError("custom weight masses must be nonnegative");
  }
  return {Type::Custom, 0.0, std::move(masses)};
}

double VandermondeWeight::mass(int x) const {
  switch (type) {
    case Type::Geometric:
      return std::pow(parameter, x);
    case Type::ExponentialGrid:
      return std::exp(-parameter * x);
    case Type::Custom:
      if (x < 0 || x >= static_cast<int>(masses.size())) throw ArgumentError("custom weight: point outside table");
      return masses[x];
  }
  return 0.0;
}

VandermondeReport verify_vandermonde(const VandermondeWeight& weight, const ConfigFunction& h, int n,
                                     int cutoff, std::uint64_t seed, int spot_checks) {
  if (n < 1 || cutoff + 1 < n) throw ArgumentError("verify_vandermonde: need 1 <= n <= T+1");
  const std::vector<Configuration> configs = combinations(cutoff + 1, n);
  const int count = static_cast<int>(configs.size());
  if (static_cast<double>(count) * count > 1e7) throw SizeError("verify_vandermonde: poset too large");

  std::vector<double> hv(count);
  for (int i = 0; i < count; ++i) {
    hv[i] = h(configs[i]);
    if (!(hv[i] >= 0.0) || !std::isfinite(hv[i])) {
      throw PreconditionError("verify_vandermonde: H must be finite and nonnegative");
    }
  }
  // Spot-check monotonicity on (x, max(x, y)), which is always a comparable pair.
  RandomState rng(seed);
  for (int s = 0; s < spot_checks; ++s) {
    const auto& x = configs[rng.below(count)];
    const auto& y = configs[rng.below(count)];
    Configuration z(n);
    for (int k = 0; k < n; ++k) z[k] = std::max(x[k], y[k]);
    const double hx = h(x), hz = h(z);
    if (hx > hz + 1e-12 * std::max(1.0, std::abs(hz))) {
      std::ostringstream os;
      os << "verify_vandermonde: H is not increasing: H(" << join_labels(x, nullptr) << ") > H("
         << join_labels(z, nullptr) << ") (labels are 1-based)";
      throw PreconditionError(os.str());
    }
  }

  MeasurePair pair{RVector(count), RVector(count)};
  for (int i = 0; i < count; ++i) {
    const auto& c = configs[i];
    double v = 1.0;
    for (int a = 0; a < n; ++a) {
      v *= weight.mass(c[a]);
      for (int b = a + 1; b < n; ++b) v *= static_cast<double>(c[b] - c[a]) * (c[b] - c[a]);
    }
    pair.p1(i) = v;
    pair.p2(i) = v * hv[i];
  }
  if (!(pair.p2.sum() > 0.0)) throw PreconditionError("verify_vandermonde: H vanishes on the support");
  pair.p1 /= pair.p1.sum();
  pair.p2 /= pair.p2.sum();

  std::vector<std::string> labels;
  for (const auto& c : configs) {
    std::ostringstream os;
    os << '(';
    for (int k = 0; k < n; ++k) os << (k ? "," : "") << c[k];
    os << ')';
    labels.push_back(os.str());
  }
  const FinitePoset poset = FinitePoset::from_comparator(std::move(labels), [&](int i, int j) {
    for (int k = 0; k < n; ++k) {
      if (configs[i][k] > configs[j][k]) return false;
    }
    return true;
  });
  const CouplingResult flow = strassen_flow(poset, pair);

  VandermondeReport rep;
  rep.n = n;
  rep.cutoff = cutoff;
  rep.elements = count;
  rep.translation_property = weight.translation_invariant();
  rep.feasible = flow.feasible;
  rep.flow_value = flow.flow_value;
  rep.witness = flow.witness;
  rep.margin = flow.witness.empty() ? std::min(0.0, flow.flow_value - 1.0)
                                    : mass_of(pair.p2, flow.witness) - mass_of(pair.p1, flow.witness);
  return rep;
}

ConfigFunction random_monotone_function(int n, int cutoff, RandomState& rng) {
  std::vector<double> c(n), s(cutoff + 1);
  for (double& v : c) v = rng.uniform();
  double acc = 0.0;
  for (double& v : s) {
    acc += rng.uniform();
    v = acc;
  }
  return [c, s](const std::vector<int>& x) {
    double h = 0.1;
    for (std::size_t i = 0; i < x.size() && i < c.size(); ++i) h += c[i] * s.at(x[i]);
    return h;
  };
}

double meixner_ratio_h(const std::vector<int>& h) {
  double r = 1.0;
  for (int x : h) r *= static_cast<double>(x) * x / ((x + 1.0) * (x + 2.0));
  return r;
}

// ---------------------------------------------------------------- chains

RatioReport density_ratio_domination(const RVector& weights, const RVector& f, const RVector& g, double tol) {
  if (weights.size() != f.size() || weights.size() != g.size()) {
    throw DimensionError("density_ratio_domination: length mismatch");
  }
  if ((weights.array() <= 0.0).any()) throw ArgumentError("density_ratio_domination: weights must be positive");
  if ((f.array() < 0.0).any() || (g.array() < 0.0).any()) {
    throw ArgumentError("density_ratio_domination: densities must be nonnegative");
  }
  const RVector mf = weights.cwiseProduct(f), mg = weights.cwiseProduct(g);
  if (std::abs(mf.sum() - 1.0) > 1e-8 || std::abs(mg.sum() - 1.0) > 1e-8) {
    throw ArgumentError("density_ratio_domination: densities are not normalized under the weights");
  }
  RatioReport r;
  r.ratio_nondecreasing = true;
  double prev = -1.0;
  for (Index i = 0; i < f.size(); ++i) {
    if (g(i) <= 0.0) continue;
    const double ratio = f(i) / g(i);
    if (ratio < prev - tol * std::max(1.0, prev)) r.ratio_nondecreasing = false;
    prev = std::max(prev, ratio);
  }
  double cf = 0.0, cg = 0.0, up = 0.0, down = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    cf += mf(i);
    cg += mg(i);
    up = std::max(up, cf - cg);
    down = std::max(down, cg - cf);
  }
  r.max_violation = up;
  r.f_dominates_g = up <= tol;
  r.g_dominates_f = down <= tol;
  return r;
}

// ---------------------------------------------------------------- empirical

std::string to_string(EmpiricalVerdict v) {
  switch (v) {
    case EmpiricalVerdict::Dominates:
      return "dominates";
    case EmpiricalVerdict::DominatedBy:
      return "dominated-by";
    case EmpiricalVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

EmpiricalReport empirical_dominance(const std::vector<double>& s1, const std::vector<double>& s2, double delta) {
  if (s1.size() < 100 || s2.size() < 100) throw SizeError("empirical_dominance: need at least 100 draws per sample");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("empirical_dominance: delta must lie in (0,1)");
  const double e1 = std::sqrt(std::log(2.0 / delta) / (2.0 * s1.size()));
  const double e2 = std::sqrt(std::log(2.0 / delta) / (2.0 * s2.size()));
  const OneSidedGaps gaps = ecdf_gaps(s1, s2);
  EmpiricalReport r;
  r.d12 = gaps.a_over_b;
  r.d21 = gaps.b_over_a;
  r.band = e1 + e2;
  if (r.d21 <= r.band && r.d12 > r.band) {
    r.verdict = EmpiricalVerdict::Dominates;
  } else if (r.d12 <= r.band && r.d21 > r.band) {
    r.verdict = EmpiricalVerdict::DominatedBy;
  }
  r.margin = r.d12 - r.d21;
  return r;
}

// ---------------------------------------------------------------- identities

double detequality_discrete(const ProjectionFrame& frame, const Configuration& a) {
  const int n = frame.rank() - 1;
  const int ground = frame.space.size();
  if (n < 0) throw PreconditionError("detequality_discrete: frame needs at least one row");
  if (ground <= n) throw PreconditionError("detequality_discrete: requires |E| > n");
  if (static_cast<int>(a.size()) != n) throw ArgumentError("detequality_discrete: A must have n elements");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= ground || (i && a[i] <= a[i - 1])) {
      throw ArgumentError("detequality_discrete: A must be sorted distinct indices");
    }
  }
  CMatrix q(n, n);
  for (int j = 0; j < n; ++j) q.col(j) = frame.rows.col(a[j]).head(n);
  const Complex rhs = det(q);
  Complex lhs(0.0);
  CMatrix m(n + 1, n + 1);
  for (int x = 0; x < ground; ++x) {
    if (std::binary_search(a.begin(), a.end(), x)) continue;
    Configuration b(a);
    b.insert(std::upper_bound(b.begin(), b.end(), x), x);
    const int r = static_cast<int>(a.end() - std::upper_bound(a.begin(), a.end(), x));
    for (int j = 0; j <= n; ++j) m.col(j) = frame.rows.col(b[j]);
    const double sign = (r % 2) ? -1.0 : 1.0;
    lhs += sign * std::conj(frame.rows(n, x)) * frame.space.weights(x) * det(m);
  }
  return std::abs(lhs - rhs);
}

PositivityReport positivity_check(int ground, const CVector& phi, const SignFunction& eps,
                                  const std::vector<Configuration>& family) {
  if (family.empty()) throw ArgumentError("positivity_check: family must be nonempty");
  if (phi.size() != ground) throw DimensionError("positivity_check: phi must have one value per point");
  const std::size_t n = family.front().size();
  for (const auto& a : family) {
    if (a.size() != n) throw ArgumentError("positivity_check: all sets must have the same size");
  }
  const Index f = static_cast<Index>(family.size());
  CMatrix big = CMatrix::Zero(f, f);
  for (Index i = 0; i < f; ++i) {
    const auto& a = family[i];
    for (Index j = 0; j < f; ++j) {
      const auto& c = family[j];
      if (i == j) {
        double s = 0.0;
        for (int x : a) s += std::norm(phi(x));
        big(i, j) = s;
        continue;
      }
      Configuration a_minus, c_minus;
      std::set_difference(a.begin(), a.end(), c.begin(), c.end(), std::back_inserter(a_minus));
      std::set_difference(c.begin(), c.end(), a.begin(), a.end(), std::back_inserter(c_minus));
      if (a_minus.size() == 1 && c_minus.size() == 1) {
        const int x = a_minus[0], y = c_minus[0];
        big(i, j) = static_cast<double>(eps(x, a) * eps(y, c)) * phi(x) * std::conj(phi(y));
      }
    }
  }
  // X(A, T) = eps(x, A) phi(x) for T = A \ {x}.
  std::map<Configuration, Index> columns;
  for (const auto& a : family) {
    for (std::size_t k = 0; k < n; ++k) {
      Configuration t(a);
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(k));
      columns.emplace(std::move(t), static_cast<Index>(columns.size()));
    }
  }
  CMatrix x = CMatrix::Zero(f, static_cast<Index>(columns.size()));
  for (Index i = 0; i < f; ++i) {
    const auto& a = family[i];
    for (std::size_t k = 0; k < n; ++k) {
      Configuration t(a);
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(k));
      x(i, columns.at(t)) = static_cast<double>(eps(a[k], a)) * phi(a[k]);
    }
  }
  PositivityReport r;
  r.factorization_error = (big - x * x.adjoint()).cwiseAbs().maxCoeff();
  r.min_eigenvalue = hermitian_eigenvalues(big).minCoeff();
  r.psd = r.min_eigenvalue >= -1e-10;
  return r;
}

double detequality_continuous(int n, const QuadratureRule& rule, const std::vector<double>& x) {
  if (n < 1) throw ArgumentError("detequality_continuous: n must be positive");
  if (static_cast<int>(x.size()) != n) throw ArgumentError("detequality_continuous: x must have n coordinates");
  if (rule.exact_degree() < 2 * n) {
    throw PreconditionError("detequality_continuous: quadrature rule is not exact to degree 2n");
  }
  const LaguerreFunctions phi(n + 1);
  RMatrix k(n + 1, n + 1);
  for (int j = 0; j < n; ++j) {
    if (!(x[j] >= 0.0)) throw ArgumentError("detequality_continuous: points must be nonnegative");
    k.col(j) = phi(x[j]);
  }
  const double rhs = det(RMatrix(k.topLeftCorner(n, n)));
  double lhs = 0.0;
  for (Index t = 0; t < rule.nodes.size(); ++t) {
    const RVector v = phi(rule.nodes(t));
    k.col(n) = v;
    lhs += rule.weights(t) * v(n) * det(k);
  }
  return std::abs(lhs - rhs);
}

InequalityReport detinequality_continuous(int n, const QuadratureRule& rule, double threshold, bool upper) {
  if (n < 1 || n > 3) throw ArgumentError("detinequality_continuous: n must lie in [1,3]");
  const LaguerreFunctions phi(n + 1);
  const Index p = rule.nodes.size();
  RMatrix values(n + 1, p);
  std::vector<char> inside(p);
  for (Index t = 0; t < p; ++t) {
    values.col(t) = phi(rule.nodes(t));
    inside[t] = upper ? rule.nodes(t) >= threshold : rule.nodes(t) <= threshold;
  }
  auto det_n = [&](const std::vector<Index>& idx) {
    RMatrix k(n, n);
    for (int j = 0; j < n; ++j) k.col(j) = values.col(idx[j]).head(n);
    return det(k);
  };
  double fact_n = 1.0;
  for (int i = 2; i <= n; ++i) fact_n *= i;

  InequalityReport r;
  // Left side: tuples in A^n.
  auto advance = [&](std::vector<Index>& v, int len) {
    for (int i = len - 1; i >= 0; --i) {
      if (++v[i] < p) return true;
      v[i] = 0;
    }
    return false;
  };
  {
    std::vector<Index> x(n, 0);
    do {
      bool ok = true;
      double w = 1.0;
      for (int j = 0; j < n; ++j) {
        ok = ok && inside[x[j]];
        w *= rule.weights(x[j]);
      }
      if (!ok) continue;
      const double d = det_n(x);
      r.lhs += w * d * d;
    } while (advance(x, n));
    r.lhs /= fact_n;
  }
  // Right side: tuples y in E^{n+1}.
  {
    std::vector<Index> y(n + 1, 0), hat(n);
    do {
      double w = 1.0;
      for (int j = 0; j <= n; ++j) w *= rule.weights(y[j]);
      double s = 0.0;
      for (int k = 0; k <= n; ++k) {
        bool ok = true;
        for (int j = 0, c = 0; j <= n; ++j) {
          if (j == k) continue;
          hat[c++] = y[j];
          ok = ok && inside[y[j]];
        }
        if (!ok) continue;
        const double sign = (k + 1) % 2 ? -1.0 : 1.0;  // (-1)^k with k 1-based
        s += sign * values(n, y[k]) * det_n(hat);
      }
      r.rhs += w * s * s;
    } while (advance(y, n + 1));
    r.rhs /= fact_n * (n + 1);
  }
  r.excess = r.rhs - r.lhs;
  return r;
}

}  // namespace dpplab
