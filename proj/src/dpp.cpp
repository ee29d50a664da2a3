#include "dpplab/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dpplab/combinatorics.hpp"

namespace dpplab {

namespace {

double mass_product(const GroundSpace& space, const Configuration& subset) {
  double m = 1.0;
  for (int i : subset) m *= space.weights(i);
  return m;
}

void check_indices(const std::vector<int>& idx, int n, const char* who) {
  for (int i : idx) {
    if (i < 0 || i >= n) {
      throw ArgumentError(std::string(who) + ": point index " + std::to_string(i) + " out of range");
    }
  }
}

void check_cap(int n, int k, std::size_t cap, const char* who) {
  if (binomial(n, k) > cap) {
    throw SizeError(std::string(who) + ": C(" + std::to_string(n) + "," + std::to_string(k) +
                    ") subsets exceed the enumeration cap; sample instead");
  }
}

}  // namespace

GroundSpace::GroundSpace(std::vector<double> labels, RVector masses)
    : points(std::move(labels)), weights(std::move(masses)) {
  if (static_cast<Index>(points.size()) != weights.size()) {
    throw DimensionError("GroundSpace: labels and weights differ in length");
  }
  if (points.empty()) throw ArgumentError("GroundSpace: empty ground set");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1] < points[i])) {
      throw ArgumentError("GroundSpace: labels must be strictly increasing");
    }
  }
  if (!(weights.array() > 0.0).all()) throw ArgumentError("GroundSpace: weights must be positive");
}

GroundSpace GroundSpace::counting(int n) {
  std::vector<double> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  return GroundSpace(std::move(labels), RVector::Ones(n));
}

std::string GroundSpace::label(int index) const {
  const double x = points.at(index);
  std::ostringstream os;
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    os << static_cast<long long>(x);
  } else {
    os << x;
  }
  return os.str();
}

KernelMatrix::KernelMatrix(GroundSpace s, CMatrix m) : space(std::move(s)), k(std::move(m)) {
  if (k.rows() != space.size() || k.cols() != space.size()) {
    throw DimensionError("KernelMatrix: kernel size does not match ground set");
  }
  if (!is_hermitian(k, 1e-12)) throw SymmetryError("KernelMatrix: kernel is not Hermitian");
}

CMatrix KernelMatrix::weighted() const {
  const CVector root = space.weights.cwiseSqrt().cast<Complex>();
  return root.asDiagonal() * k * root.asDiagonal();
}

ProjectionFrame::ProjectionFrame(GroundSpace s, CMatrix r, double tol)
    : space(std::move(s)), rows(std::move(r)) {
  if (rows.cols() != space.size()) {
    throw DimensionError("ProjectionFrame: row length does not match ground set");
  }
  if (rows.rows() > space.size()) {
    throw PreconditionError("ProjectionFrame: rank exceeds ground set size");
  }
  const double defect = orthonormality_defect();
  if (!(defect <= tol)) {
    throw PreconditionError("ProjectionFrame: rows are not orthonormal (defect " +
                            std::to_string(defect) + ")");
  }
}

double ProjectionFrame::orthonormality_defect() const {
  if (rows.rows() == 0) return 0.0;
  const CMatrix g = space.inner_product().gram(rows);
  return (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

KernelMatrix ProjectionFrame::kernel() const {
  CMatrix k = rows.transpose() * rows.conjugate();
  k = (k + k.adjoint()) / 2.0;
  return KernelMatrix(space, k);
}

ProjectionFrame ProjectionFrame::leading(int n) const {
  if (n < 0 || n > rank()) throw ArgumentError("ProjectionFrame::leading: bad row count");
  return ProjectionFrame(space, rows.topRows(n), 1e-8);
}

ExactLaw ExactLaw::from_table(int ground_size, std::map<Configuration, double> table) {
  ExactLaw law;
  law.ground_size = ground_size;
  int size = -2;
  for (const auto& [subset, p] : table) {
    if (!std::is_sorted(subset.begin(), subset.end()) ||
        std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
      throw ArgumentError("ExactLaw: subsets must be sorted and distinct");
    }
    check_indices(subset, ground_size, "ExactLaw");
    if (p < -1e-12) throw ArgumentError("ExactLaw: negative probability");
    const int s = static_cast<int>(subset.size());
    size = (size == -2 || size == s) ? s : -1;
  }
  law.support_size = size == -2 ? 0 : size;
  law.probabilities = std::move(table);
  if (std::abs(law.total() - 1.0) > 1e-10) throw ArgumentError("ExactLaw: probabilities must sum to 1");
  return law;
}

double ExactLaw::probability(const Configuration& subset) const {
  const auto it = probabilities.find(subset);
  return it == probabilities.end() ? 0.0 : it->second;
}

double ExactLaw::total() const {
  double s = 0.0;
  for (const auto& [subset, p] : probabilities) s += p;
  return s;
}

AdmissibilityReport check_admissible(const KernelMatrix& k, double tol) {
  AdmissibilityReport report;
  report.eigenvalues = hermitian_eigenvalues(k.weighted());
  for (Index i = 0; i < report.eigenvalues.size(); ++i) {
    const double l = report.eigenvalues(i);
    if (l < -tol || l > 1.0 + tol) report.offenders.push_back(l);
  }
  report.admissible = report.offenders.empty();
  return report;
}

double mixed_probability(const KernelMatrix& k, const std::vector<int>& in_points,
                         const std::vector<int>& out_points) {
  const int n = k.space.size();
  check_indices(in_points, n, "mixed_probability");
  check_indices(out_points, n, "mixed_probability");
  std::set<int> seen;
  for (int i : in_points) {
    if (!seen.insert(i).second) throw ArgumentError("mixed_probability: repeated point");
  }
  for (int i : out_points) {
    if (!seen.insert(i).second) {
      throw ArgumentError("mixed_probability: in and out lists overlap or repeat");
    }
  }
  if (!check_admissible(k).admissible) {
    throw DomainError("mixed_probability: kernel spectrum is not inside [0,1]");
  }
  std::vector<int> all(in_points);
  all.insert(all.end(), out_points.begin(), out_points.end());
  const Index s = static_cast<Index>(all.size());
  const CMatrix kw = k.weighted();
  CMatrix m(s, s);
  for (Index i = 0; i < s; ++i) {
    const bool out = i >= static_cast<Index>(in_points.size());
    for (Index j = 0; j < s; ++j) {
      const Complex v = kw(all[i], all[j]);
      m(i, j) = out ? (i == j ? Complex(1.0) - v : -v) : v;
    }
  }
  return det(m).real();
}

ExactLaw projection_exact_law(const ProjectionFrame& frame, std::size_t cap) {
  const int n = frame.space.size();
  const int r = frame.rank();
  check_cap(n, r, cap, "projection_exact_law");
  ExactLaw law;
  law.ground_size = n;
  law.support_size = r;
  CMatrix sub(r, r);
  for_each_combination(n, r, [&](const Configuration& a) {
    for (int j = 0; j < r; ++j) sub.col(j) = frame.rows.col(a[j]);
    law.probabilities[a] = std::norm(det(sub)) * mass_product(frame.space, a);
  });
  return law;
}

BiorthogonalLaw biorthogonal_exact_law(const RMatrix& phis, const RMatrix& psis,
                                       const GroundSpace& space, std::size_t cap) {
  const int n = space.size();
  if (phis.rows() != psis.rows() || phis.cols() != n || psis.cols() != n) {
    throw DimensionError("biorthogonal_exact_law: function lists must match the ground set");
  }
  const int r = static_cast<int>(phis.rows());
  check_cap(n, r, cap, "biorthogonal_exact_law");
  const RMatrix g = phis * space.weights.asDiagonal() * psis.transpose();
  const double z = det(g);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (!(std::abs(z) > 1e-12 * std::pow(scale, r))) {
    throw DegeneracyError("biorthogonal_exact_law: Gram matrix is singular");
  }
  BiorthogonalLaw out;
  out.normalizer = z;
  out.law.ground_size = n;
  out.law.support_size = r;
  RMatrix a(r, r), b(r, r);
  for_each_combination(n, r, [&](const Configuration& subset) {
    for (int j = 0; j < r; ++j) {
      a.col(j) = phis.col(subset[j]);
      b.col(j) = psis.col(subset[j]);
    }
    out.law.probabilities[subset] = det(a) * det(b) * mass_product(space, subset) / z;
  });
  return out;
}

std::map<Configuration, double> correlation_from_top(const ExactLaw& law, int k) {
  const int top = law.support_size >= 0
                      ? law.support_size
                      : [&] {
                          int m = 0;
                          for (const auto& [s, p] : law.probabilities) m = std::max<int>(m, s.size());
                          return m;
                        }();
  if (k < 1 || k > top) {
    throw ArgumentError("correlation_from_top: k must lie in [1, " + std::to_string(top) + "]");
  }
  std::map<Configuration, double> rho;
  for_each_combination(law.ground_size, k, [&](const Configuration& a) { rho[a] = 0.0; });
  for (const auto& [b, p] : law.probabilities) {
    if (static_cast<int>(b.size()) < k) continue;
    for_each_combination(static_cast<int>(b.size()), k, [&](const std::vector<int>& pos) {
      Configuration a(k);
      for (int i = 0; i < k; ++i) a[i] = b[pos[i]];
      rho[a] += p;
    });
  }
  return rho;
}

Configuration sample_projection(const ProjectionFrame& frame, RandomState& rng) {
  const int n = frame.space.size();
  const int r = frame.rank();
  // Columns of v0 are orthonormal in C^n.
  const CMatrix v0 =
      (frame.rows * frame.space.weights.cwiseSqrt().cast<Complex>().asDiagonal()).transpose();
  std::vector<double> prob(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    CMatrix v = v0;
    Configuration out;
    bool degenerate = false;
    for (int remaining = r; remaining > 0; --remaining) {
      double total = 0.0;
      for (int x = 0; x < n; ++x) {
        double p = v.row(x).squaredNorm();
        if (p < 1e-12 && p > -1e-12) p = std::max(p, 0.0);
        prob[x] = p;
        total += p;
      }
      if (!(total > 1e-12)) {
        degenerate = true;
        break;
      }
      double u = rng.uniform() * total;
      int pick = n - 1;
      for (int x = 0; x < n; ++x) {
        if (u < prob[x]) {
          pick = x;
          break;
        }
        u -= prob[x];
      }
      while (prob[pick] <= 0.0 && pick > 0) --pick;
      const CVector dir = v.row(pick).adjoint();
      if (dir.norm() < 1e-12) {
        degenerate = true;
        break;
      }
      out.push_back(pick);
      if (remaining == 1) break;
      const Eigen::HouseholderQR<CMatrix> qr{CMatrix(dir)};
      const CMatrix q = qr.householderQ() * CMatrix::Identity(remaining, remaining);
      v = v * q.rightCols(remaining - 1);
    }
    if (!degenerate) {
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw ResampleError("sample_projection: projection step stayed degenerate after 100 retries");
}

ProjectionFrame reweight(const ProjectionFrame& frame, const RVector& g) {
  if (g.size() != frame.space.size()) throw DimensionError("reweight: g has the wrong length");
  if (!(g.array() > 0.0).all()) throw ArgumentError("reweight: g must be positive");
  GroundSpace space(frame.space.points, frame.space.weights.cwiseQuotient(g.cwiseAbs2()));
  CMatrix rows = frame.rows * g.cast<Complex>().asDiagonal();
  return ProjectionFrame(std::move(space), std::move(rows), 1e-8);
}

ProjectionFrame random_frame(int n, int r, RandomState& rng) {
  if (r < 0 || r > n) throw ArgumentError("random_frame: rank must lie in [0, n]");
  GroundSpace space = GroundSpace::counting(n);
  RMatrix g(r, n);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  const RMatrix q = orthonormalize(g, space.inner_product());
  return ProjectionFrame(std::move(space), q.cast<Complex>());
}

}  // namespace dpplab

namespace dpplab {

BiorthogonalData biorthogonal_counterexample() {
  BiorthogonalData d;
  d.phis.resize(2, 3);
  d.phis << 1, 1, 0,
            1, 1, 1;
  d.psis.resize(2, 3);
  d.psis << 1, 0, -1,
            -1, 1, 1;
  d.space = GroundSpace::counting(3);
  d.labels = {"a", "b", "c"};
  return d;
}

}  // namespace dpplab
