#pragma once

// Determinantal point processes on finite weighted ground sets.
//
// Probabilities always carry the reference masses explicitly: a subset A of
// a rank-n projection process has P(A) = |det Q_A|^2 * prod_{x in A} mu(x),
// where Q_A keeps the columns of the frame indexed by A. On counting measure
// this is the plain |det Q_A|^2.

#include <map>
#include <string>
#include <vector>

#include "dpplab/numerics.hpp"
#include "dpplab/random.hpp"

namespace dpplab {

inline constexpr std::size_t kEnumerationCap = 1'000'000;

/// Sorted distinct point indices into a GroundSpace.
using Configuration = std::vector<int>;

struct GroundSpace {
  std::vector<double> points;  // labels, strictly increasing
  RVector weights;             // mu({x}) > 0

  GroundSpace() = default;
  GroundSpace(std::vector<double> labels, RVector masses);

  /// Points 1..n with unit masses.
  static GroundSpace counting(int n);

  int size() const noexcept { return static_cast<int>(points.size()); }
  WeightedInnerProduct inner_product() const { return WeightedInnerProduct(weights); }
  std::string label(int index) const;
};

struct KernelMatrix {
  GroundSpace space;
  CMatrix k;  // k(i,j) = K(x_i, x_j)

  KernelMatrix(GroundSpace s, CMatrix m);
  /// sqrt(mu_i) K(x_i,x_j) sqrt(mu_j); its spectrum is that of the integral operator.
  CMatrix weighted() const;
};

/// n functions orthonormal under the space's inner product, one per row.
struct ProjectionFrame {
  GroundSpace space;
  CMatrix rows;

  /// Throws PreconditionError when the rows are not orthonormal within `tol`.
  ProjectionFrame(GroundSpace s, CMatrix r, double tol = 1e-10);

  int rank() const noexcept { return static_cast<int>(rows.rows()); }
  /// Largest entry of |Gram - I|.
  double orthonormality_defect() const;
  KernelMatrix kernel() const;
  /// The first `n` rows as a frame on the same space.
  ProjectionFrame leading(int n) const;
};

/// Law of a finite point process as a table over subsets of the ground set.
/// Fixed-cardinality laws (every subset of size `support_size`) come from the
/// projection and biorthogonal constructors; `from_table` also accepts mixed
/// sizes, in which case `support_size` is -1.
struct ExactLaw {
  int ground_size = 0;
  int support_size = 0;
  std::map<Configuration, double> probabilities;

  static ExactLaw from_table(int ground_size, std::map<Configuration, double> table);

  double probability(const Configuration& subset) const;
  double total() const;
};

struct AdmissibilityReport {
  bool admissible = false;
  RVector eigenvalues;
  std::vector<double> offenders;
};

AdmissibilityReport check_admissible(const KernelMatrix& k, double tol = 1e-10);

/// P(in_points all in X, out_points all outside X) for the process with
/// kernel k. Indices refer to the ground space.
double mixed_probability(const KernelMatrix& k, const std::vector<int>& in_points,
                         const std::vector<int>& out_points);

ExactLaw projection_exact_law(const ProjectionFrame& frame, std::size_t cap = kEnumerationCap);

struct BiorthogonalLaw {
  ExactLaw law;
  /// det G with G(i,j) = sum_x phi_i(x) psi_j(x) mu(x); the law is
  /// det(Phi_A) det(Psi_A) prod mu / det G.
  double normalizer = 0.0;
};

BiorthogonalLaw biorthogonal_exact_law(const RMatrix& phis, const RMatrix& psis,
                                       const GroundSpace& space,
                                       std::size_t cap = kEnumerationCap);

/// Two pairs of functions on three points (counting measure) with
/// <phi_i, psi_j> = delta_ij whose rank-1 and rank-2 laws are not ordered.
struct BiorthogonalData {
  RMatrix phis;
  RMatrix psis;
  GroundSpace space;
  std::vector<std::string> labels;  // a, b, c
};
BiorthogonalData biorthogonal_counterexample();

/// rho_k(A) = sum over B containing A of P(B), for every k-subset A of the
/// ground set (unordered convention: no k! factor).
std::map<Configuration, double> correlation_from_top(const ExactLaw& law, int k);

/// One exact draw from the projection process by the sequential chain rule.
Configuration sample_projection(const ProjectionFrame& frame, RandomState& rng);

/// Rows phi_i * g on the space with masses mu / g^2; the induced law is unchanged.
ProjectionFrame reweight(const ProjectionFrame& frame, const RVector& g);

/// Uniformly random rank-r frame on the counting space of n points (real
/// entries, orthonormalized Gaussian rows).
ProjectionFrame random_frame(int n, int r, RandomState& rng);

}  // namespace dpplab
