#pragma once

// Dense linear algebra shared by every module: determinants, Hermitian
// spectra, and orthonormalization against weighted discrete inner products
// (counting measures, lattice masses, or quadrature weights).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "dpplab/error.hpp"

namespace dpplab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace detail {

template <typename Scalar>
double magnitude(const Scalar& s) {
  using std::abs;
  return abs(s);
}

template <typename Scalar>
Scalar conjugate(const Scalar& s) {
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    return std::conj(s);
  } else {
    return s;
  }
}

}  // namespace detail

/// Determinant by partial-pivoted LU on a copy. The empty matrix has
/// determinant 1.
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw DimensionError("det: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
  if (m.rows() == 0) return Scalar(1);
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Eigen::PartialPivLU<Plain>(Plain(m)).determinant();
}

/// Largest |m(i,j) - conj(m(j,i))|.
template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_defect: matrix must be square");
  }
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// True when `m` is square and Hermitian up to `tol` (absolute, scaled by the
/// largest entry once that exceeds 1).
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return hermitian_defect(m) <= tol * scale;
}

/// Real eigenvalues of a Hermitian matrix in ascending order.
template <typename Derived>
RVector hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_eigenvalues: matrix must be square");
  }
  if (!is_hermitian(m, tol)) {
    throw SymmetryError("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                        std::to_string(hermitian_defect(m)) + ")");
  }
  if (m.rows() == 0) return RVector(0);
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  // Symmetrize so roundoff in the upper triangle cannot leak in.
  const Plain h = (Plain(m) + Plain(m.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw DomainError("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// <f, g> = sum_i w_i f_i conj(g_i) over a finite index set.
class WeightedInnerProduct {
 public:
  explicit WeightedInnerProduct(RVector weights) : weights_(std::move(weights)) {
    if (weights_.size() == 0) throw ArgumentError("WeightedInnerProduct: no weights");
    if ((weights_.array() < 0.0).any() || !weights_.allFinite()) {
      throw ArgumentError("WeightedInnerProduct: weights must be finite and nonnegative");
    }
    if (!(weights_.array() > 0.0).any()) {
      throw ArgumentError("WeightedInnerProduct: at least one weight must be positive");
    }
  }

  static WeightedInnerProduct unit(Index size) {
    return WeightedInnerProduct(RVector::Ones(size));
  }

  const RVector& weights() const noexcept { return weights_; }
  Index size() const noexcept { return weights_.size(); }

  template <typename A, typename B>
  auto operator()(const Eigen::MatrixBase<A>& f, const Eigen::MatrixBase<B>& g) const {
    if (f.size() != size() || g.size() != size()) {
      throw DimensionError("WeightedInnerProduct: vector length does not match weights");
    }
    return (f.reshaped().array() * weights_.array().template cast<typename A::Scalar>() *
            g.reshaped().conjugate().array())
        .sum();
  }

  template <typename A>
  double norm(const Eigen::MatrixBase<A>& f) const {
    return std::sqrt(std::max(0.0, std::real((*this)(f, f))));
  }

  /// Gram matrix G(i,j) = <row_i, row_j>.
  template <typename Derived>
  auto gram(const Eigen::MatrixBase<Derived>& rows) const {
    using Scalar = typename Derived::Scalar;
    if (rows.cols() != size()) {
      throw DimensionError("WeightedInnerProduct::gram: row length does not match weights");
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> weighted =
        rows * weights_.cast<Scalar>().asDiagonal();
    return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(weighted * rows.adjoint());
  }

 private:
  RVector weights_;
};

/// Orthonormalizes the rows of `vectors` (each row a function on the index
/// set of `ip`) in order: output row k spans the same space as input rows
/// 0..k. Modified Gram-Schmidt with one re-orthogonalization pass. A row whose
/// residual falls below 1e-12 times its own norm raises DependenceError.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> orthonormalize(
    const Eigen::MatrixBase<Derived>& vectors, const WeightedInnerProduct& ip) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (vectors.cols() != ip.size()) {
    throw DimensionError("orthonormalize: vector length does not match inner product");
  }
  Plain out(vectors.rows(), vectors.cols());
  for (Index i = 0; i < vectors.rows(); ++i) {
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> v = vectors.row(i);
    const double original = ip.norm(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < i; ++j) {
        const Scalar c = ip(v, out.row(j));
        v -= c * out.row(j);
      }
    }
    const double residual = ip.norm(v);
    if (!(original > 0.0) || residual <= 1e-12 * original) {
      throw DependenceError("orthonormalize: vector " + std::to_string(i) +
                                " is linearly dependent on its predecessors",
                            static_cast<std::size_t>(i));
    }
    out.row(i) = v / Scalar(residual);
  }
  return out;
}

/// Nodes and weights of a Gauss quadrature rule.
struct QuadratureRule {
  RVector nodes;
  RVector weights;
  /// Polynomial degree integrated exactly (2 * points - 1).
  Index exact_degree() const { return 2 * nodes.size() - 1; }
};

/// Gauss-Laguerre rule for e^{-x} dx on [0, inf).
QuadratureRule gauss_laguerre(Index points);

/// Polynomials p_0, ..., p_{count-1} orthonormal under a discrete measure,
/// stored by their three-term recurrence
///   b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),  p_0 = 1/sqrt(mass).
struct OrthonormalPolynomials {
  RVector a;  // a_0 .. a_{count-2}
  RVector b;  // b_1 .. b_{count-1}, stored at index k-1
  double p0 = 1.0;
  Index count = 0;

  RVector evaluate(double x) const;
  /// count x |xs| matrix with row k = p_k(xs).
  RMatrix evaluate(const RVector& xs) const;
};

/// Stieltjes procedure on the discrete measure sum_i w_i delta_{x_i}.
OrthonormalPolynomials stieltjes(const RVector& nodes, const RVector& weights, Index count);

}  // namespace dpplab
