#include "dpplab/numerics.hpp"

#include <cmath>
#include <string>

namespace dpplab {

namespace {

// Laguerre L_n(x) and L_{n-1}(x) by the standard recurrence.
std::pair<double, double> laguerre_pair(Index n, double x) {
  double prev = 1.0;
  double cur = 1.0 - x;
  if (n == 0) return {1.0, 0.0};
  for (Index k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule gauss_laguerre(Index points) {
  if (points < 1) throw ArgumentError("gauss_laguerre: need at least one point");
  // Golub-Welsch for the initial nodes: Jacobi matrix diag 2k+1, off-diag k.
  RMatrix jacobi = RMatrix::Zero(points, points);
  for (Index k = 0; k < points; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0;
    if (k + 1 < points) {
      jacobi(k, k + 1) = k + 1.0;
      jacobi(k + 1, k) = k + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(jacobi, Eigen::EigenvaluesOnly);
  RVector nodes = solver.eigenvalues();

  // Newton polish on L_n, then weights from the closed form
  // w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2), which keeps full relative accuracy
  // for the tiny weights at large nodes.
  const double n = static_cast<double>(points);
  RVector weights(points);
  for (Index i = 0; i < points; ++i) {
    double x = nodes(i);
    for (int it = 0; it < 8; ++it) {
      const auto [ln, lnm1] = laguerre_pair(points, x);
      const double derivative = n * (ln - lnm1) / x;  // x L_n' = n (L_n - L_{n-1})
      const double step = ln / derivative;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    nodes(i) = x;
    const double lnp1 = laguerre_pair(points + 1, x).first;
    weights(i) = x / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1);
  }
  return {nodes, weights};
}

RVector OrthonormalPolynomials::evaluate(double x) const {
  RVector values(count);
  if (count == 0) return values;
  values(0) = p0;
  if (count > 1) values(1) = (x - a(0)) * values(0) / b(0);
  for (Index k = 1; k + 1 < count; ++k) {
    values(k + 1) = ((x - a(k)) * values(k) - b(k - 1) * values(k - 1)) / b(k);
  }
  return values;
}

RMatrix OrthonormalPolynomials::evaluate(const RVector& xs) const {
  RMatrix out(count, xs.size());
  for (Index j = 0; j < xs.size(); ++j) out.col(j) = evaluate(xs(j));
  return out;
}

OrthonormalPolynomials stieltjes(const RVector& nodes, const RVector& weights, Index count) {
  if (nodes.size() != weights.size()) {
    throw DimensionError("stieltjes: nodes and weights differ in length");
  }
  if (count < 1) throw ArgumentError("stieltjes: count must be positive");
  if (count > nodes.size()) {
    throw DependenceError("stieltjes: a measure on " + std::to_string(nodes.size()) +
                              " points supports at most that many orthonormal polynomials",
                          static_cast<std::size_t>(nodes.size()));
  }
  const WeightedInnerProduct ip(weights);
  const double mass = weights.sum();

  OrthonormalPolynomials poly;
  poly.count = count;
  poly.p0 = 1.0 / std::sqrt(mass);
  poly.a.resize(std::max<Index>(count - 1, 0));
  poly.b.resize(std::max<Index>(count - 1, 0));

  RVector prev = RVector::Zero(nodes.size());
  RVector cur = RVector::Constant(nodes.size(), poly.p0);
  double b_prev = 0.0;
  for (Index k = 0; k + 1 < count; ++k) {
    const double ak = ip(RVector(nodes.cwiseProduct(cur)), cur);
    RVector next = (nodes.array() - ak).matrix().cwiseProduct(cur) - b_prev * prev;
    const double bk = ip.norm(next);
    if (!(bk > 1e-12 * std::sqrt(mass) * std::max(1.0, nodes.cwiseAbs().maxCoeff()))) {
      throw DependenceError("stieltjes: recurrence broke down at degree " + std::to_string(k + 1),
                            static_cast<std::size_t>(k + 1));
    }
    poly.a(k) = ak;
    poly.b(k) = bk;
    prev = cur;
    cur = next / bk;
    b_prev = bk;
  }
  return poly;
}

}  // namespace dpplab
