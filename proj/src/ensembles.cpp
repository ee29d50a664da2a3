#include "dpplab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dpplab {

namespace {

constexpr int kLaguerrePoints = 64;

CMatrix complex_gaussian(Index rows, Index cols, RandomState& rng) {
  CMatrix a(rows, cols);
  const double s = std::sqrt(0.5);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(i, j) = Complex(s * re, s * im);
    }
  }
  return a;
}

double log_vandermonde_sq(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = std::abs(x[i] - x[j]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      s += 2.0 * std::log(d);
    }
  }
  return s;
}

// a * log(x) with the convention 0 * log 0 = 0.
double xlogy(double a, double x) { return a == 0.0 ? 0.0 : a * std::log(x); }

double log_meixner_weight(const EnsembleSpec& s, double x) {
  const double b = s.n - s.m;
  return std::lgamma(x + b + 1.0) - std::lgamma(x + 1.0) - std::lgamma(b + 1.0) + x * std::log(s.q);
}

}  // namespace

EnsembleSpec EnsembleSpec::wishart(int m, int n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::Wishart;
  s.m = m;
  s.n = n;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::jacobi(int n1, int n2, int n) {
  EnsembleSpec s;
  s.kind = EnsembleKind::Jacobi;
  s.n1 = n1;
  s.n2 = n2;
  s.n = n;
  s.m = n;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::meixner(int m, int n, double q) {
  EnsembleSpec s;
  s.kind = EnsembleKind::Meixner;
  s.m = m;
  s.n = n;
  s.q = q;
  s.validate();
  return s;
}

void EnsembleSpec::validate() const {
  switch (kind) {
    case EnsembleKind::Wishart:
      if (m < 1 || n < 1 || m > n) throw ArgumentError("Wishart(m,n) requires 1 <= m <= n");
      break;
    case EnsembleKind::Jacobi:
      if (n < 1 || n1 < n || n2 < n) throw ArgumentError("Jacobi(n1,n2,n) requires 1 <= n <= n1, n2");
      break;
    case EnsembleKind::Meixner:
      if (m < 1 || n < 1 || m > n) throw ArgumentError("Meixner(m,n,q) requires 1 <= m <= n");
      if (!(q > 0.0 && q < 1.0)) throw ArgumentError("Meixner(m,n,q) requires 0 < q < 1");
      break;
  }
}

int EnsembleSpec::size() const { return kind == EnsembleKind::Jacobi ? n : m; }

std::string EnsembleSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case EnsembleKind::Wishart:
      os << "wishart(" << m << "," << n << ")";
      break;
    case EnsembleKind::Jacobi:
      os << "jacobi(" << n1 << "," << n2 << "," << n << ")";
      break;
    case EnsembleKind::Meixner:
      os << "meixner(" << m << "," << n << "," << q << ")";
      break;
  }
  return os.str();
}

EnsembleSampler::EnsembleSampler(const EnsembleSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.kind == EnsembleKind::Meixner) {
    const int cutoff = meixner_truncate(spec_, kMeixnerSampleTol);
    frame_.emplace(projection_frame(spec_, meixner_space(spec_, cutoff)));
  }
}

std::vector<double> EnsembleSampler::draw(RandomState& rng) const {
  std::vector<double> values;
  switch (spec_.kind) {
    case EnsembleKind::Wishart: {
      const CMatrix a = complex_gaussian(spec_.m, spec_.n, rng);
      const RVector ev = hermitian_eigenvalues(CMatrix(a * a.adjoint()));
      values.assign(ev.data(), ev.data() + ev.size());
      break;
    }
    case EnsembleKind::Jacobi: {
      const CMatrix a = complex_gaussian(spec_.n, spec_.n1, rng);
      const CMatrix b = complex_gaussian(spec_.n, spec_.n2, rng);
      const CMatrix s = a * a.adjoint() + b * b.adjoint();
      Eigen::LLT<CMatrix> llt(s);
      if (llt.info() != Eigen::Success) throw DegeneracyError("Jacobi: AA* + BB* is not positive definite");
      const CMatrix x = llt.matrixL().solve(a);
      const RVector ev = hermitian_eigenvalues(CMatrix(x * x.adjoint()));
      values.assign(ev.data(), ev.data() + ev.size());
      break;
    }
    case EnsembleKind::Meixner: {
      const Configuration c = sample_projection(*frame_, rng);
      for (int i : c) values.push_back(frame_->space.points[i]);
      break;
    }
  }
  std::sort(values.begin(), values.end());
  return values;
}

EigenSample sample_eigs(const EnsembleSpec& spec, RandomState& rng) {
  EigenSample s;
  s.spec = spec;
  s.seed = rng.seed();
  s.stream = rng.stream();
  s.values = EnsembleSampler(spec).draw(rng);
  return s;
}

double sample_top(const EnsembleSpec& spec, RandomState& rng) {
  return sample_eigs(spec, rng).values.back();
}

LogDensity log_density(const EnsembleSpec& spec, const std::vector<double>& config) {
  spec.validate();
  if (static_cast<int>(config.size()) != spec.size()) {
    throw ArgumentError("log_density: " + spec.name() + " needs " + std::to_string(spec.size()) +
                        " coordinates");
  }
  LogDensity out;
  out.value = log_vandermonde_sq(config);
  double log_z = 0.0;
  switch (spec.kind) {
    case EnsembleKind::Wishart: {
      const double a = spec.n - spec.m;
      for (double x : config) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw SupportError("log_density: Wishart values must be >= 0");
        out.value += xlogy(a, x) - x;
      }
      for (int j = 0; j < spec.m; ++j) log_z += std::lgamma(j + 2.0) + std::lgamma(j + a + 1.0);
      break;
    }
    case EnsembleKind::Jacobi: {
      const double a = spec.n1 - spec.n;
      const double b = spec.n2 - spec.n;
      for (double x : config) {
        if (!(x >= 0.0 && x <= 1.0)) throw SupportError("log_density: Jacobi values must lie in [0,1]");
        out.value += xlogy(a, x) + xlogy(b, 1.0 - x);
      }
      // Selberg integral with exponent 1 on |Delta|^2.
      const double al = a + 1.0, be = b + 1.0;
      for (int j = 0; j < spec.n; ++j) {
        log_z += std::lgamma(al + j) + std::lgamma(be + j) + std::lgamma(j + 2.0) -
                 std::lgamma(al + be + spec.n + j - 1.0);
      }
      break;
    }
    case EnsembleKind::Meixner: {
      for (double x : config) {
        if (!(x >= 0.0) || x != std::floor(x)) {
          throw SupportError("log_density: Meixner particles must be nonnegative integers");
        }
        out.value += log_meixner_weight(spec, x);
      }
      const double beta = spec.n - spec.m + 1.0;
      const double c = spec.q;
      log_z = std::lgamma(spec.m + 1.0);
      for (int j = 0; j < spec.m; ++j) {
        log_z += std::lgamma(j + 1.0) + std::lgamma(beta + j) - std::lgamma(beta) + j * std::log(c) -
                 (2.0 * j + beta) * std::log1p(-c);
      }
      break;
    }
  }
  out.log_normalizer = log_z;
  return out;
}

int meixner_truncate(const EnsembleSpec& spec, double tol) {
  if (spec.kind != EnsembleKind::Meixner) throw ArgumentError("meixner_truncate: Meixner spec required");
  spec.validate();
  if (!(tol > 0.0 && tol < 1.0)) throw ArgumentError("meixner_truncate: tol must lie in (0,1)");
  constexpr int kMax = 1'000'000;
  const double p = 2.0 * (spec.m - 1);
  auto log_term = [&](double x) {
    return (x > 0.0 ? xlogy(p, x) : (p == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity())) +
           log_meixner_weight(spec, x);
  };
  auto head_log_term = [&](double x) { return log_meixner_weight(spec, x); };
  // Terms are unimodal in x; sum the tail from T+1 until it is negligible.
  auto tail = [&](int t, double ref) {
    double s = 0.0;
    for (long x = t + 1;; ++x) {
      const double v = std::exp(log_term(static_cast<double>(x)) - ref);
      s += v;
      if (x > t + 1 && v < 1e-18 * s && log_term(x + 1.0) < log_term(static_cast<double>(x))) break;
      if (x > 4L * kMax) break;
    }
    return s;
  };
  auto head = [&](int t, double ref) {
    double s = 0.0;
    for (int x = 0; x <= t; ++x) s += std::exp(head_log_term(x) - ref);
    return s;
  };
  const double ref = head_log_term(0.0);
  auto ok = [&](int t) { return tail(t, ref) < tol * head(t, ref); };
  int hi = 1;
  while (!ok(hi)) {
    if (hi > kMax) throw SizeError("meixner_truncate: cutoff would exceed 10^6");
    hi *= 2;
  }
  int lo = hi / 2;  // ok(lo) is false unless lo == 0
  if (lo == 0 && ok(0)) return 0;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  if (hi > kMax) throw SizeError("meixner_truncate: cutoff would exceed 10^6");
  return hi;
}

GroundSpace meixner_space(const EnsembleSpec& spec, int cutoff) {
  if (spec.kind != EnsembleKind::Meixner) throw ArgumentError("meixner_space: Meixner spec required");
  if (cutoff < 0) throw ArgumentError("meixner_space: negative cutoff");
  std::vector<double> labels(cutoff + 1);
  RVector w(cutoff + 1);
  const double ref = log_meixner_weight(spec, 0.0);
  for (int x = 0; x <= cutoff; ++x) {
    labels[x] = x;
    w(x) = std::exp(log_meixner_weight(spec, x) - ref);
  }
  w /= w.sum();
  return GroundSpace(std::move(labels), std::move(w));
}

GroundSpace quadrature_space(const QuadratureRule& rule) {
  return GroundSpace(std::vector<double>(rule.nodes.data(), rule.nodes.data() + rule.nodes.size()),
                     rule.weights);
}

ProjectionFrame projection_frame(const EnsembleSpec& spec, const GroundSpace& support) {
  spec.validate();
  const RVector x = Eigen::Map<const RVector>(support.points.data(), support.size());
  switch (spec.kind) {
    case EnsembleKind::Wishart: {
      if ((spec.n - spec.m) % 2 != 0) {
        throw ArgumentError("projection_frame: Wishart kernels need n - m even");
      }
      const int shift = (spec.n - spec.m) / 2;
      const RVector w = support.weights.cwiseProduct(x.array().pow(2.0 * shift).matrix());
      const OrthonormalPolynomials p = stieltjes(x, w, spec.m);
      RMatrix rows = p.evaluate(x);
      rows = rows * x.array().pow(shift).matrix().asDiagonal();
      return ProjectionFrame(support, rows.cast<Complex>(), 1e-8);
    }
    case EnsembleKind::Meixner: {
      const OrthonormalPolynomials p = stieltjes(x, support.weights, spec.m);
      return ProjectionFrame(support, p.evaluate(x).cast<Complex>(), 1e-8);
    }
    case EnsembleKind::Jacobi:
      break;
  }
  throw ArgumentError("projection_frame: Jacobi kernels are not provided; sample the matrix model");
}

ProjectionFrame monomial_frame(const GroundSpace& space, const std::vector<int>& exponents) {
  RMatrix v(static_cast<Index>(exponents.size()), space.size());
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] < 0) throw ArgumentError("monomial_frame: exponents must be nonnegative");
    for (int j = 0; j < space.size(); ++j) v(k, j) = std::pow(space.points[j], exponents[k]);
  }
  const RMatrix q = orthonormalize(v, space.inner_product());
  return ProjectionFrame(space, q.cast<Complex>(), 1e-8);
}

LaguerreFunctions::LaguerreFunctions(int count, int shift) : count_(count), shift_(shift) {
  if (count < 1 || shift < 0) throw ArgumentError("LaguerreFunctions: bad count or shift");
  if (2 * (count - 1 + shift) > 2 * kLaguerrePoints - 1) {
    throw PreconditionError("LaguerreFunctions: degree too high for the quadrature rule");
  }
  const QuadratureRule rule = gauss_laguerre(kLaguerrePoints);
  const RVector w = rule.weights.cwiseProduct(rule.nodes.array().pow(2.0 * shift).matrix());
  poly_ = stieltjes(rule.nodes, w, count);
}

RVector LaguerreFunctions::operator()(double x) const {
  return poly_.evaluate(x) * std::pow(x, shift_);
}

}  // namespace dpplab
