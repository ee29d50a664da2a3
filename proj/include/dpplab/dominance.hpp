#pragma once

// Stochastic dominance on finite posets (exact, by upsets or max-flow),
// the projection-frame and Vandermonde dominance verifiers, the determinant
// identities behind them, and a DKW-banded empirical comparison.
//
// Convention throughout: "p1 is dominated by p2" means p1(U) <= p2(U) for
// every upset U.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpplab/dpp.hpp"
#include "dpplab/numerics.hpp"
#include "dpplab/random.hpp"

namespace dpplab {

/// Partial order stored as its reflexive-transitive closure.
class FinitePoset {
 public:
  /// `less` lists pairs (a, b) with a < b; the closure is taken and cycles
  /// are rejected.
  FinitePoset(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& less);

  /// Order given by a comparator leq(i, j) that is already a partial order.
  static FinitePoset from_comparator(std::vector<std::string> labels,
                                     const std::function<bool(int, int)>& leq);
  static FinitePoset chain(int n);
  static FinitePoset antichain(int n);

  int size() const noexcept { return n_; }
  bool leq(int a, int b) const { return le_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Smallest upset containing `elements`.
  std::vector<int> up_closure(const std::vector<int>& elements) const;
  bool is_upset(const std::vector<int>& elements) const;

 private:
  FinitePoset() = default;
  void close_and_check();

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<char> le_;
};

struct MeasurePair {
  RVector p1;
  RVector p2;
  /// Throws ArgumentError unless both are probability vectors of the poset's size.
  void validate(const FinitePoset& poset) const;
};

/// Every upset exactly once, as a sorted index list. At most 25 elements.
std::vector<std::vector<int>> upset_enumerate(const FinitePoset& poset);
/// Streaming form; f receives a bitmask over the elements.
void for_each_upset(const FinitePoset& poset, const std::function<void(std::uint32_t)>& f);

enum class DominanceMethod { Enumerate, Flow };

struct DominanceResult {
  bool dominated = false;   // p1 dominated by p2
  double margin = 0.0;      // min over upsets of p2(U) - p1(U)
  std::vector<int> witness; // an upset attaining the margin (empty when margin >= 0)
};

DominanceResult dominance_exact(const FinitePoset& poset, const MeasurePair& pair,
                                DominanceMethod method = DominanceMethod::Flow);

struct CouplingResult {
  bool feasible = false;
  double flow_value = 0.0;
  /// (i, j) -> mass with i <= j; present when feasible.
  std::map<std::pair<int, int>, double> coupling;
  /// Upset certifying infeasibility (p1(U) > p2(U)); empty when feasible.
  std::vector<int> witness;
};

/// Strassen coupling via max-flow with capacities scaled by 2^40.
CouplingResult strassen_flow(const FinitePoset& poset, const MeasurePair& pair);

/// Containment order on the n-subsets and (n+1)-subsets of a ground set.
struct ContainmentPoset {
  FinitePoset poset;
  std::vector<Configuration> subsets;  // element i of the poset
  int lower_count = 0;                 // the first lower_count elements are n-subsets
};
ContainmentPoset containment_poset(int ground, int n, const GroundSpace* space = nullptr);

struct LyonsReport {
  int ground = 0;
  int rank = 0;               // n: rows used for the smaller process
  bool flow_feasible = false;
  double flow_value = 0.0;
  bool exhaustive = false;    // whether the family check ran
  std::uint64_t families = 0;
  double family_margin = 0.0; // min P2(B) - P1(A) over families
  double margin = 0.0;        // overall worst margin
  bool passed = false;
};

/// Law of the first n rows against the law of all n+1 rows of `frame`.
LyonsReport verify_lyons(const ProjectionFrame& frame, std::size_t family_cap_log2 = 12);

struct VandermondeWeight {
  enum class Type { Geometric, ExponentialGrid, Custom };
  Type type = Type::Geometric;
  double parameter = 0.5;
  std::vector<double> masses;  // Custom: mass at 0..T

  static VandermondeWeight geometric(double q);
  /// Masses e^{-rate x} on the integer grid.
  static VandermondeWeight exponential_grid(double rate);
  static VandermondeWeight custom(std::vector<double> masses);

  double mass(int x) const;
  /// mu(x + y) = f(y) mu(x) holds by construction for the built-in kinds.
  bool translation_invariant() const { return type != Type::Custom; }
};

using ConfigFunction = std::function<double(const std::vector<int>&)>;

struct VandermondeReport {
  int n = 0;
  int cutoff = 0;
  int elements = 0;
  bool translation_property = false;
  bool feasible = false;
  double flow_value = 0.0;
  double margin = 0.0;
  std::vector<int> witness;
};

/// P1 ~ Delta^2 prod mu and P2 ~ Delta^2 H prod mu on sorted distinct
/// n-vectors over {0..T}; checks P1 dominated by P2 in componentwise order.
/// H is spot-checked for monotonicity on `spot_checks` random comparable pairs.
VandermondeReport verify_vandermonde(const VandermondeWeight& weight, const ConfigFunction& h, int n,
                                     int cutoff, std::uint64_t seed = kDefaultSeed,
                                     int spot_checks = 1000);

/// 0.1 + sum_i c_i s(x_i) with c_i >= 0 and s nondecreasing, both random.
ConfigFunction random_monotone_function(int n, int cutoff, RandomState& rng);

/// H(h) = prod h_i^2 / ((h_i + 1)(h_i + 2)).
double meixner_ratio_h(const std::vector<int>& h);

struct RatioReport {
  bool ratio_nondecreasing = false;
  bool f_dominates_g = false;  // CDF_f <= CDF_g pointwise
  bool g_dominates_f = false;
  double max_violation = 0.0;  // max(CDF_f - CDF_g, 0)
};

/// Masses w*f and w*g on a chain 0 < 1 < ... .
RatioReport density_ratio_domination(const RVector& weights, const RVector& f, const RVector& g,
                                     double tol = 1e-10);

enum class EmpiricalVerdict { Dominates, DominatedBy, Inconclusive };
std::string to_string(EmpiricalVerdict v);

struct EmpiricalReport {
  EmpiricalVerdict verdict = EmpiricalVerdict::Inconclusive;
  double d12 = 0.0;   // sup (F1 - F2)
  double d21 = 0.0;   // sup (F2 - F1)
  double band = 0.0;  // eps1 + eps2
  double margin = 0.0;
};

/// "Dominates" means s2 stochastically dominates s1.
EmpiricalReport empirical_dominance(const std::vector<double>& s1, const std::vector<double>& s2,
                                    double delta);

/// |sum_{x not in A} (-1)^{r(A,x)} conj(phi_{n+1}(x)) mu(x) det M_{A+x} - det Q_A|.
double detequality_discrete(const ProjectionFrame& frame, const Configuration& a);

struct PositivityReport {
  double factorization_error = 0.0;  // max |M - X X*|
  double min_eigenvalue = 0.0;
  bool psd = false;
};

using SignFunction = std::function<int(int, const Configuration&)>;

PositivityReport positivity_check(int ground, const CVector& phi, const SignFunction& eps,
                                  const std::vector<Configuration>& family);

/// Quadrature residual of the integral identity for the orthonormal
/// Laguerre functions L_0..L_n at the point x (length n).
double detequality_continuous(int n, const QuadratureRule& rule, const std::vector<double>& x);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double excess = 0.0;  // rhs - lhs
};

/// Both sides of the Cauchy-Schwarz step on the quadrature measure with the
/// symmetric set {x : every coordinate <= threshold} (or >= when `upper`).
InequalityReport detinequality_continuous(int n, const QuadratureRule& rule, double threshold,
                                          bool upper = false);

}  // namespace dpplab
