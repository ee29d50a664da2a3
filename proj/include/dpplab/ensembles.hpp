#pragma once

// Wishart, Jacobi and Meixner ensembles: matrix-model samplers, joint
// densities, and the orthonormal frames whose projection kernels describe
// them as determinantal processes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpplab/dpp.hpp"
#include "dpplab/numerics.hpp"
#include "dpplab/random.hpp"

namespace dpplab {

enum class EnsembleKind { Wishart, Jacobi, Meixner };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Wishart;
  int m = 1;       // Wishart/Meixner particle count
  int n = 1;       // Wishart/Meixner second dimension; Jacobi particle count
  int n1 = 0;      // Jacobi
  int n2 = 0;      // Jacobi
  double q = 0.5;  // Meixner

  /// Eigenvalues of A A* with A an m x n complex Gaussian matrix, m <= n.
  static EnsembleSpec wishart(int m, int n);
  /// Eigenvalues of A A* (A A* + B B*)^{-1}, A is n x n1, B is n x n2.
  static EnsembleSpec jacobi(int n1, int n2, int n);
  /// m particles on {0,1,...} with weight C(h+n-m, h) q^h, m <= n.
  static EnsembleSpec meixner(int m, int n, double q);

  /// Throws ArgumentError when the parameters violate the constraints.
  void validate() const;
  /// Number of eigenvalues / particles.
  int size() const;
  std::string name() const;
};

struct EigenSample {
  EnsembleSpec spec;
  std::vector<double> values;  // ascending
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Truncation tolerance used when sampling Meixner configurations.
inline constexpr double kMeixnerSampleTol = 1e-10;

EigenSample sample_eigs(const EnsembleSpec& spec, RandomState& rng);

/// Reusable sampler; for Meixner the truncated lattice and frame are built
/// once here instead of on every draw.
class EnsembleSampler {
 public:
  explicit EnsembleSampler(const EnsembleSpec& spec);
  const EnsembleSpec& spec() const noexcept { return spec_; }
  /// Ascending eigenvalues / particle positions.
  std::vector<double> draw(RandomState& rng) const;

 private:
  EnsembleSpec spec_;
  std::optional<ProjectionFrame> frame_;
};

/// The largest eigenvalue / rightmost particle of one draw.
double sample_top(const EnsembleSpec& spec, RandomState& rng);

struct LogDensity {
  /// log of the unnormalized joint density (pmf for Meixner) at the
  /// configuration; -inf when two coordinates coincide.
  double value = 0.0;
  /// log Z with Z the integral (sum) of the unnormalized density over
  /// ordered tuples.
  std::optional<double> log_normalizer;
};

LogDensity log_density(const EnsembleSpec& spec, const std::vector<double>& config);

/// Smallest lattice cutoff T with sum_{x>T} x^{2(m-1)} w(x) < tol * sum_{x<=T} w-weighted head.
int meixner_truncate(const EnsembleSpec& spec, double tol);

/// Single-particle Meixner weight C(x+n-m, x) q^x on {0..T}, normalized.
GroundSpace meixner_space(const EnsembleSpec& spec, int cutoff);

/// Ground space carrying a quadrature rule (nodes as points, weights as masses).
GroundSpace quadrature_space(const QuadratureRule& rule);

/// Orthonormal frame for the ensemble's projection kernel, built with the
/// three-term recurrence.
///  Wishart(m, n) with l = (n-m)/2 integral: rows x^l p_j(x), j < m, where
///   p_j are orthonormal for x^{2l} e^{-x}; `support` must be a quadrature
///   space for e^{-x} dx.
///  Meixner(m, n, q): rows p_j(x), j < m, orthonormal for the single-particle
///   weight; `support` must be meixner_space(spec, T).
ProjectionFrame projection_frame(const EnsembleSpec& spec, const GroundSpace& support);

/// Rows x^{e_k} orthonormalized in the listed order by Gram-Schmidt under the
/// space's masses. Independent of the recurrence path; used to cross-check it.
ProjectionFrame monomial_frame(const GroundSpace& space, const std::vector<int>& exponents);

/// Orthonormal polynomials for x^{2 shift} e^{-x} dx evaluated as
/// x^shift p_j(x) at arbitrary points (count functions).
class LaguerreFunctions {
 public:
  LaguerreFunctions(int count, int shift = 0);
  int count() const noexcept { return count_; }
  /// count values x^shift p_j(x), j = 0..count-1.
  RVector operator()(double x) const;

 private:
  int count_;
  int shift_;
  OrthonormalPolynomials poly_;
};

}  // namespace dpplab
