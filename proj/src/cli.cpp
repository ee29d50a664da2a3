#include "dpplab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "dpplab/combinatorics.hpp"
#include "dpplab/dominance.hpp"
#include "dpplab/dpp.hpp"
#include "dpplab/ensembles.hpp"
#include "dpplab/error.hpp"
#include "dpplab/io.hpp"
#include "dpplab/lpp.hpp"
#include "dpplab/stats.hpp"
#include "dpplab/ust.hpp"

namespace dpplab {

namespace {

// Substream index reserved for setup work (random frames, single grids).
constexpr std::uint64_t kSetupStream = 0xFFFFFFFFull;

struct Context {
  std::uint64_t seed = kDefaultSeed;
  int replicas = 1;
  int jobs = 1;
  double tol = 1e-10;
  bool csv = false;

  RandomState setup_rng() const { return derive_substream(seed, kSetupStream); }
};

struct Outcome {
  Json results = Json::object();
  Table table;
  int status = 0;
};

using Action = std::function<Outcome(const Context&)>;
using Registry = std::map<const CLI::App*, Action>;

template <typename T>
std::vector<std::vector<T>> replicate(std::uint64_t seed, int replicas, int jobs, std::size_t total,
                                      const std::function<std::vector<T>(RandomState&, std::size_t)>& draw) {
  if (replicas < 1) throw ArgumentError("--replicas must be at least 1");
  if (jobs < 1) throw ArgumentError("--jobs must be at least 1");
  const std::size_t r = static_cast<std::size_t>(replicas);
  std::vector<std::vector<T>> parts(r);
  std::vector<std::exception_ptr> errors(r);
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < r; i += static_cast<std::size_t>(jobs)) {
      try {
        RandomState rng = derive_substream(seed, i);
        const std::size_t count = total / r + (i < total % r ? 1 : 0);
        parts[i] = draw(rng, count);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), r);
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return parts;
}

template <typename T>
std::vector<T> concat(std::vector<std::vector<T>> parts) {
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Draws of a scalar sampler, split over replicas and merged.
std::vector<double> scalar_draws(const Context& ctx, std::uint64_t seed, std::size_t total,
                                 const std::function<double(RandomState&)>& one) {
  return merge_replicas(run_replicas(seed, ctx.replicas, ctx.jobs, total,
                                     [&](RandomState& rng, std::size_t count) {
                                       std::vector<double> v(count);
                                       for (auto& x : v) x = one(rng);
                                       return v;
                                     }));
}

Json typed_value(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  long long i = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ec == std::errc() && p == s.data() + s.size() && !s.empty()) return i;
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (!s.empty() && end == s.c_str() + s.size()) return d;
  return s;
}

Json collect_params(const CLI::App& leaf) {
  Json params = Json::object();
  for (const CLI::Option* opt : leaf.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->get_type_size() == 0) {
      params[name] = opt->count() > 0;
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
    } else {
      value = opt->get_default_str();
    }
    if (value.empty()) continue;
    params[name] = typed_value(value);
  }
  return params;
}

std::vector<double> to_std(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string join_labels(const std::vector<std::string>& labels, const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "-" : "") + labels.at(idx[i]);
  return s;
}

template <typename T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& var, const std::string& desc) {
  return app->add_option(name, var, desc)->capture_default_str();
}

// ---------------------------------------------------------------- dpp

struct FrameInput {
  std::string frame;
  std::string psi;
  std::string weights;
  std::string points;
  int ground = 0;
  int rank = 0;
};

void add_frame_options(CLI::App* s, FrameInput& in) {
  s->add_option("--frame", in.frame, "orthonormal rows, 'a,b;c,d'");
  s->add_option("--weights", in.weights, "point masses (default 1)");
  s->add_option("--points", in.points, "increasing point labels (default 1..N)");
  s->add_option("--ground", in.ground, "random frame: number of points");
  s->add_option("--rank", in.rank, "random frame: number of rows");
}

GroundSpace make_space(const FrameInput& in, int size) {
  std::vector<double> labels = parse_reals(in.points);
  if (labels.empty()) {
    for (int i = 1; i <= size; ++i) labels.push_back(i);
  }
  std::vector<double> w = parse_reals(in.weights);
  if (w.empty()) w.assign(static_cast<std::size_t>(size), 1.0);
  if (static_cast<int>(labels.size()) != size || static_cast<int>(w.size()) != size) {
    throw DimensionError("points and weights must have one entry per column");
  }
  return GroundSpace(labels, Eigen::Map<const RVector>(w.data(), size));
}

ProjectionFrame make_frame(const FrameInput& in, const Context& ctx) {
  if (!in.frame.empty()) {
    const RMatrix rows = parse_matrix(in.frame);
    return ProjectionFrame(make_space(in, static_cast<int>(rows.cols())), rows.cast<Complex>(),
                           std::max(ctx.tol, 1e-10));
  }
  if (in.ground > 0 && in.rank > 0) {
    RandomState rng = ctx.setup_rng();
    return random_frame(in.ground, in.rank, rng);
  }
  throw ArgumentError("give --frame or both --ground and --rank");
}

KernelMatrix make_kernel(const std::string& text, const FrameInput& in) {
  const RMatrix k = parse_matrix(text);
  return KernelMatrix(make_space(in, static_cast<int>(k.cols())), k.cast<Complex>());
}

void add_dpp(CLI::App& app, Registry& reg) {
  auto* g = app.add_subcommand("dpp", "determinantal point processes on finite sets");
  g->require_subcommand(1);

  {
    struct O { std::string kernel; FrameInput in; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("admissible", "check 0 <= K <= I for a Hermitian kernel");
    s->add_option("--kernel", o->kernel, "kernel matrix 'a,b;c,d'")->required();
    s->add_option("--weights", o->in.weights, "point masses (default 1)");
    reg[s] = [o](const Context& ctx) {
      const auto rep = check_admissible(make_kernel(o->kernel, o->in), ctx.tol);
      Outcome out;
      out.results = {{"admissible", rep.admissible},
                     {"eigenvalues", to_std(rep.eigenvalues)},
                     {"offenders", rep.offenders}};
      out.status = rep.admissible ? 0 : 1;
      return out;
    };
  }

  {
    struct O { FrameInput in; bool example = false; int rank = 1; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("law", "exact law of a projection or biorthogonal process");
    add_frame_options(s, o->in);
    s->add_option("--psi", o->in.psi, "second function list; makes the law biorthogonal");
    s->add_flag("--example", o->example, "built-in three-point biorthogonal pair (use --rank 1|2)");
    reg[s] = [o](const Context& ctx) {
      Outcome out;
      if (o->example) {
        const auto d = biorthogonal_counterexample();
        const int r = o->in.rank > 0 ? o->in.rank : 1;
        if (r < 1 || r > 2) throw ArgumentError("--rank must be 1 or 2 with --example");
        const auto b = biorthogonal_exact_law(d.phis.topRows(r), d.psis.topRows(r), d.space);
        Json entries = Json::array();
        out.table.header = {"subset", "probability"};
        for (const auto& [subset, p] : b.law.probabilities) {
          const std::string lab = join_labels(d.labels, subset);
          entries.push_back({{"subset", lab}, {"probability", p}});
          out.table.rows.push_back({lab, format_real(p)});
        }
        out.results = {{"support_size", r}, {"normalizer", b.normalizer}, {"probabilities", entries}};
        return out;
      }
      if (!o->in.psi.empty()) {
        const RMatrix phis = parse_matrix(o->in.frame);
        const RMatrix psis = parse_matrix(o->in.psi);
        const GroundSpace space = make_space(o->in, static_cast<int>(phis.cols()));
        const auto b = biorthogonal_exact_law(phis, psis, space);
        out.results = to_json(b.law, space);
        out.results["normalizer"] = b.normalizer;
        out.table = law_table(b.law, space);
        return out;
      }
      const ProjectionFrame frame = make_frame(o->in, ctx);
      const ExactLaw law = projection_exact_law(frame);
      out.results = to_json(law, frame.space);
      out.table = law_table(law, frame.space);
      return out;
    };
  }

  {
    struct O { std::string kernel; FrameInput in; std::string include, exclude; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("prob", "P(include all, exclude all) for a kernel or frame");
    s->add_option("--kernel", o->kernel, "kernel matrix 'a,b;c,d'");
    add_frame_options(s, o->in);
    s->add_option("--include", o->include, "1-based points that must be present");
    s->add_option("--exclude", o->exclude, "1-based points that must be absent");
    reg[s] = [o](const Context& ctx) {
      auto zero_based = [](const std::string& text) {
        std::vector<int> v = parse_ints(text);
        for (int& x : v) --x;
        return v;
      };
      const KernelMatrix k = o->kernel.empty() ? make_frame(o->in, ctx).kernel() : make_kernel(o->kernel, o->in);
      const double p = mixed_probability(k, zero_based(o->include), zero_based(o->exclude));
      Outcome out;
      out.results = {{"include", parse_ints(o->include)}, {"exclude", parse_ints(o->exclude)}, {"probability", p}};
      return out;
    };
  }

  {
    struct O { FrameInput in; std::size_t samples = 1000; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("sample", "sample a projection process");
    add_frame_options(s, o->in);
    opt(s, "--samples", o->samples, "number of draws");
    reg[s] = [o](const Context& ctx) {
      const ProjectionFrame frame = make_frame(o->in, ctx);
      const auto draws = concat(replicate<Configuration>(
          ctx.seed, ctx.replicas, ctx.jobs, o->samples,
          [&](RandomState& rng, std::size_t count) {
            std::vector<Configuration> v(count);
            for (auto& c : v) c = sample_projection(frame, rng);
            return v;
          }));
      std::map<Configuration, std::size_t> counts;
      bool sizes_ok = true;
      for (const auto& c : draws) {
        ++counts[c];
        sizes_ok = sizes_ok && static_cast<int>(c.size()) == frame.rank();
      }
      Outcome out;
      Json freq = Json::array();
      std::optional<ExactLaw> law;
      if (binomial(frame.space.size(), frame.rank()) <= kEnumerationCap) law = projection_exact_law(frame);
      std::vector<double> emp, exact;
      std::set<Configuration> keys;
      for (const auto& [c, n] : counts) keys.insert(c);
      if (law) {
        for (const auto& [c, p] : law->probabilities) keys.insert(c);
      }
      const double total = static_cast<double>(draws.size());
      for (const auto& c : keys) {
        const std::size_t n = counts.count(c) ? counts.at(c) : 0;
        Json e = {{"subset", subset_label(frame.space, c)}, {"count", n}, {"empirical", n / total}};
        emp.push_back(n / total);
        if (law) {
          e["exact"] = law->probability(c);
          exact.push_back(law->probability(c));
        }
        freq.push_back(e);
      }
      out.results = {{"rank", frame.rank()}, {"samples", draws.size()}, {"sizes_ok", sizes_ok},
                     {"frequencies", freq}};
      if (law) out.results["tv"] = total_variation(emp, exact);
      out.table.header = {"draw", "subset"};
      for (std::size_t i = 0; i < draws.size(); ++i) {
        out.table.rows.push_back({std::to_string(i), subset_label(frame.space, draws[i])});
      }
      out.status = sizes_ok ? 0 : 1;
      return out;
    };
  }
}

// ---------------------------------------------------------------- ust

template <typename T>
double as_double(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v.template convert_to<double>();
  } else {
    return static_cast<double>(v);
  }
}

template <typename T>
std::string as_exact(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return rational_string(v);
  } else {
    return format_real(static_cast<double>(v));
  }
}

struct UstExact {
  int n = 4;
  std::string stat = "distance";
  int k = 0;
  std::string legs;
  std::string include_edges, exclude_edges;
  std::string e, f;
};

template <typename T>
Outcome ust_exact_as(const UstExact& o) {
  std::vector<T> values;
  std::vector<std::string> names;
  std::string statistic;
  if (o.stat == "distance") {
    statistic = "distance_pmf";
    values = distance_pmf<T>(o.n);
    for (std::size_t k = 1; k <= values.size(); ++k) names.push_back(std::to_string(k));
  } else if (o.stat == "degree") {
    statistic = "degree_factorial_moment";
    const int lo = o.k > 0 ? o.k : 1;
    const int hi = o.k > 0 ? o.k : o.n - 1;
    for (int k = lo; k <= hi; ++k) {
      values.push_back(degree_factorial_moment<T>(o.n, k));
      names.push_back(std::to_string(k));
    }
  } else if (o.stat == "leaf") {
    statistic = "leaf_statistics";
    const auto s = leaf_statistics<T>(o.n);
    values = {s.p_leaf, s.expected_fraction, s.cov_pair, s.var_fraction};
    names = {"p_leaf", "expected_fraction", "cov_pair", "var_fraction"};
  } else if (o.stat == "shape") {
    statistic = "shape_probability";
    values = {shape_probability<T>(o.n, o.k, parse_ints(o.legs))};
  } else if (o.stat == "edge") {
    statistic = "transfer_current";
    const auto e = parse_edges(o.e);
    const auto f = o.f.empty() ? e : parse_edges(o.f);
    if (e.size() != 1 || f.size() != 1) throw ArgumentError("--e and --f take one edge each, like 1-2");
    values = {transfer_current<T>(o.n, e[0], f[0])};
  } else if (o.stat == "subset") {
    statistic = "subset_probability";
    values = {subset_probability<T>(o.n, parse_edges(o.include_edges), parse_edges(o.exclude_edges))};
  } else {
    throw ArgumentError("unknown --stat '" + o.stat + "'");
  }
  Outcome out;
  Json vals = Json::array(), exact = Json::array();
  out.table.header = {"name", "value", "exact"};
  for (std::size_t i = 0; i < values.size(); ++i) {
    vals.push_back(as_double(values[i]));
    exact.push_back(as_exact(values[i]));
    out.table.rows.push_back({i < names.size() ? names[i] : statistic, format_real(as_double(values[i])),
                              as_exact(values[i])});
  }
  out.results = {{"n", o.n}, {"statistic", statistic}, {"values", vals}, {"exact", exact}};
  if (!names.empty()) out.results["names"] = names;
  return out;
}

// Falling factorial (d)_k.
long falling(int d, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) r *= (d - i);
  return r;
}

void add_ust(CLI::App& app, Registry& reg) {
  auto* g = app.add_subcommand("ust", "uniform spanning tree of the complete graph");
  g->require_subcommand(1);

  {
    auto o = std::make_shared<UstExact>();
    auto* s = g->add_subcommand("exact", "closed-form statistics");
    opt(s, "--n", o->n, "number of vertices");
    opt(s, "--stat", o->stat, "distance|degree|leaf|shape|edge|subset")
        ->check(CLI::IsMember({"distance", "degree", "leaf", "shape", "edge", "subset"}));
    s->add_option("--k", o->k, "moment order (degree) or number of leaves (shape)");
    s->add_option("--legs", o->legs, "leg lengths for shape, 2k-3 values");
    s->add_option("--include-edges", o->include_edges, "edges forced in, like 1-2,2-3");
    s->add_option("--exclude-edges", o->exclude_edges, "edges forced out");
    s->add_option("--e", o->e, "first edge for the transfer current");
    s->add_option("--f", o->f, "second edge (default: same as --e)");
    reg[s] = [o](const Context&) {
      return o->n <= 400 ? ust_exact_as<Rational>(*o) : ust_exact_as<double>(*o);
    };
  }

  {
    struct O { int n = 100; std::size_t samples = 1000; std::string stat = "distance"; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("sample", "Wilson's algorithm");
    opt(s, "--n", o->n, "number of vertices");
    opt(s, "--samples", o->samples, "number of trees");
    opt(s, "--stat", o->stat, "tree|distance|degree|leaf")
        ->check(CLI::IsMember({"tree", "distance", "degree", "leaf"}));
    reg[s] = [o](const Context& ctx) {
      Outcome out;
      const int n = o->n;
      if (n < 2) throw ArgumentError("--n must be at least 2");
      if (o->stat == "tree") {
        const auto trees = concat(replicate<SpanningTree>(
            ctx.seed, ctx.replicas, ctx.jobs, o->samples, [n](RandomState& rng, std::size_t count) {
              std::vector<SpanningTree> v;
              for (std::size_t i = 0; i < count; ++i) v.push_back(sample_wilson(n, rng));
              return v;
            }));
        Json list = Json::array();
        out.table.header = {"tree", "u", "v"};
        for (std::size_t t = 0; t < trees.size(); ++t) {
          Json edges = Json::array();
          for (const auto& [u, v] : trees[t].edges) {
            edges.push_back({u, v});
            out.table.rows.push_back({std::to_string(t), std::to_string(u), std::to_string(v)});
          }
          list.push_back(edges);
        }
        out.results = {{"n", n}, {"statistic", "tree"}, {"trees", list}};
        return out;
      }
      std::function<double(RandomState&)> one;
      if (o->stat == "distance") {
        one = [n](RandomState& rng) { return sample_wilson(n, rng).distance(1, 2) / std::sqrt(double(n)); };
      } else if (o->stat == "degree") {
        one = [n](RandomState& rng) { return double(sample_wilson(n, rng).degrees()[1]); };
      } else {
        one = [n](RandomState& rng) {
          const auto d = sample_wilson(n, rng).degrees();
          return double(std::count(d.begin() + 1, d.end(), 1)) / n;
        };
      }
      const auto xs = scalar_draws(ctx, ctx.seed, o->samples, one);
      Json summary = {{"mean", mean(xs)}, {"variance", variance(xs)}};
      if (o->stat == "distance") {
        summary["ks_rayleigh"] = ks_one_sample(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x * x / 2); });
      } else if (o->stat == "degree") {
        const int top = static_cast<int>(*std::max_element(xs.begin(), xs.end()));
        std::vector<double> emp(static_cast<std::size_t>(top) + 1, 0.0), lim(emp.size(), 0.0);
        for (double x : xs) emp[static_cast<std::size_t>(x)] += 1.0 / xs.size();
        double fact = 1.0;
        for (int d = 1; d <= top; ++d) {
          if (d > 1) fact *= (d - 1);
          lim[d] = std::exp(-1.0) / fact;
        }
        summary["pmf"] = emp;
        summary["tv_poisson"] = total_variation(emp, lim) + 0.5 * std::max(0.0, 1.0 - [&] {
          double s = 0;
          for (double p : lim) s += p;
          return s;
        }());
      } else {
        summary["gap_to_limit"] = std::abs(mean(xs) - std::exp(-1.0));
      }
      out.results = {{"n", n}, {"statistic", o->stat}, {"samples", xs.size()}, {"summary", summary}};
      out.table.header = {"value"};
      for (double x : xs) out.table.rows.push_back({format_real(x)});
      return out;
    };
  }

  {
    struct O { int n = 5; int max_edges = 2; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("verify", "compare closed forms with full enumeration");
    opt(s, "--n", o->n, "number of vertices, 3..8");
    opt(s, "--max-edges", o->max_edges, "largest edge set for subset probabilities");
    reg[s] = [o](const Context&) {
      const int n = o->n;
      if (n < 3 || n > 8) throw ArgumentError("--n must lie in 3..8");
      std::vector<SpanningTree> trees;
      for (const auto& t : enumerate_trees(n)) trees.push_back(t);
      const Rational total(static_cast<long>(trees.size()));
      std::size_t checks = 0;
      Json mismatches = Json::array();
      auto check = [&](const std::string& what, const Rational& formula, const Rational& counted) {
        ++checks;
        if (formula != counted) {
          mismatches.push_back({{"check", what}, {"formula", rational_string(formula)},
                                {"enumeration", rational_string(counted)}});
        }
      };
      BigInt cayley = 1;
      for (int i = 0; i < n - 2; ++i) cayley *= n;
      ++checks;
      if (kirchhoff_count(n, complete_graph_edges(n)) != cayley || BigInt(trees.size()) != cayley) {
        mismatches.push_back({{"check", "tree count"}});
      }
      const auto pmf = distance_pmf<Rational>(n);
      for (int k = 1; k <= n - 1; ++k) {
        long c = 0;
        for (const auto& t : trees) c += t.distance(1, 2) == k;
        check("distance " + std::to_string(k), pmf[k - 1], Rational(c) / total);
      }
      for (int k = 1; k <= n - 1; ++k) {
        long c = 0;
        for (const auto& t : trees) c += falling(t.degrees()[1], k);
        check("degree moment " + std::to_string(k), degree_factorial_moment<Rational>(n, k), Rational(c) / total);
      }
      const auto leaf = leaf_statistics<Rational>(n);
      long one = 0, both = 0;
      Rational second(0);
      for (const auto& t : trees) {
        const auto d = t.degrees();
        one += d[1] == 1;
        both += d[1] == 1 && d[2] == 1;
        const long leaves = std::count(d.begin() + 1, d.end(), 1);
        second += Rational(leaves * leaves, n * n);
      }
      const Rational p = Rational(one) / total;
      check("leaf probability", leaf.p_leaf, p);
      check("leaf pair covariance", leaf.cov_pair, Rational(both) / total - p * p);
      check("leaf fraction variance", leaf.var_fraction, second / total - p * p);
      const auto edges = complete_graph_edges(n);
      const int ne = static_cast<int>(edges.size());
      for (int size = 1; size <= std::min(o->max_edges, ne); ++size) {
        for_each_combination(ne, size, [&](const std::vector<int>& chosen) {
          for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
            std::vector<OrientedEdge> in, out;
            for (int j = 0; j < size; ++j) {
              const auto& e = edges[chosen[j]];
              ((mask >> j) & 1u ? out : in).push_back({e.first, e.second});
            }
            long c = 0;
            for (const auto& t : trees) {
              bool ok = true;
              for (const auto& e : in) ok = ok && t.contains(e.tail, e.head);
              for (const auto& e : out) ok = ok && !t.contains(e.tail, e.head);
              c += ok;
            }
            check("subset", subset_probability<Rational>(n, in, out), Rational(c) / total);
          }
        });
      }
      Outcome out;
      out.results = {{"n", n}, {"trees", trees.size()}, {"checks", checks}, {"mismatches", mismatches}};
      out.status = mismatches.empty() ? 0 : 1;
      return out;
    };
  }
}

// ---------------------------------------------------------------- ensemble

struct EnsembleInput {
  std::string kind = "wishart";
  int m = 2, n = 2, n1 = 2, n2 = 2;
  double q = 0.5;
};

void add_ensemble_options(CLI::App* s, EnsembleInput& in) {
  opt(s, "--kind", in.kind, "wishart|jacobi|meixner")->check(CLI::IsMember({"wishart", "jacobi", "meixner"}));
  opt(s, "--m", in.m, "particles (wishart, meixner)");
  opt(s, "--n", in.n, "second dimension (wishart, meixner) or particles (jacobi)");
  opt(s, "--n1", in.n1, "jacobi first sample size");
  opt(s, "--n2", in.n2, "jacobi second sample size");
  opt(s, "--q", in.q, "meixner parameter");
}

EnsembleSpec make_spec(const EnsembleInput& in) {
  EnsembleSpec spec;
  if (in.kind == "wishart") spec = EnsembleSpec::wishart(in.m, in.n);
  else if (in.kind == "jacobi") spec = EnsembleSpec::jacobi(in.n1, in.n2, in.n);
  else spec = EnsembleSpec::meixner(in.m, in.n, in.q);
  spec.validate();
  return spec;
}

void add_ensemble(CLI::App& app, Registry& reg) {
  auto* g = app.add_subcommand("ensemble", "Wishart, Jacobi and Meixner ensembles");
  g->require_subcommand(1);

  {
    struct O { EnsembleInput in; std::size_t samples = 100; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("sample", "eigenvalue or particle configurations");
    add_ensemble_options(s, o->in);
    opt(s, "--samples", o->samples, "number of draws");
    reg[s] = [o](const Context& ctx) {
      const EnsembleSampler sampler(make_spec(o->in));
      const auto draws = concat(replicate<std::vector<double>>(
          ctx.seed, ctx.replicas, ctx.jobs, o->samples, [&](RandomState& rng, std::size_t count) {
            std::vector<std::vector<double>> v(count);
            for (auto& d : v) d = sampler.draw(rng);
            return v;
          }));
      std::vector<double> tops;
      Outcome out;
      out.table.header = {"draw", "index", "value"};
      for (std::size_t i = 0; i < draws.size(); ++i) {
        tops.push_back(draws[i].back());
        for (std::size_t j = 0; j < draws[i].size(); ++j) {
          out.table.rows.push_back({std::to_string(i), std::to_string(j), format_real(draws[i][j])});
        }
      }
      std::sort(tops.begin(), tops.end());
      out.results = {{"ensemble", sampler.spec().name()}, {"samples", draws.size()},
                     {"top_mean", mean(tops)}, {"top_variance", variance(tops)}, {"draws", draws}};
      return out;
    };
  }

  {
    struct O { EnsembleInput in; std::string x; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("density", "log joint density of a configuration");
    add_ensemble_options(s, o->in);
    s->add_option("--x", o->x, "configuration, comma separated")->required();
    reg[s] = [o](const Context&) {
      const auto d = log_density(make_spec(o->in), parse_reals(o->x));
      Outcome out;
      out.results = {{"log_density", d.value}};
      out.results["log_normalizer"] = d.log_normalizer ? Json(*d.log_normalizer) : Json(nullptr);
      return out;
    };
  }

  {
    struct O { EnsembleInput in; int points = 64; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("kernel", "projection kernel built two ways");
    add_ensemble_options(s, o->in);
    opt(s, "--points", o->points, "quadrature points (wishart)");
    reg[s] = [o](const Context& ctx) {
      const EnsembleSpec spec = make_spec(o->in);
      GroundSpace space;
      int shift = 0;
      Json extra = Json::object();
      if (spec.kind == EnsembleKind::Meixner) {
        const int cutoff = meixner_truncate(spec, ctx.tol);
        space = meixner_space(spec, cutoff);
        extra["cutoff"] = cutoff;
      } else if (spec.kind == EnsembleKind::Wishart) {
        if ((spec.n - spec.m) % 2 != 0) throw ArgumentError("wishart kernel needs n - m even");
        space = quadrature_space(gauss_laguerre(o->points));
        shift = (spec.n - spec.m) / 2;
        extra["points"] = o->points;
      } else {
        throw ArgumentError("no kernel construction for the jacobi ensemble");
      }
      const ProjectionFrame frame = projection_frame(spec, space);
      std::vector<int> exps;
      for (int j = 0; j < spec.m; ++j) exps.push_back(shift + j);
      const ProjectionFrame mono = monomial_frame(space, exps);
      // sqrt(mu) K sqrt(mu): raw kernel values blow up where the masses vanish.
      const CMatrix k1 = frame.kernel().weighted(), k2 = mono.kernel().weighted();
      const double diff = (k1 - k2).cwiseAbs().maxCoeff();
      const double trace = k1.diagonal().real().sum();
      Outcome out;
      out.results = {{"ensemble", spec.name()}, {"orthonormality_defect", frame.orthonormality_defect()},
                     {"trace", trace}, {"kernel_difference", diff}};
      out.results.update(extra);
      out.status = diff <= 1e-8 && std::abs(trace - spec.m) <= 1e-8 ? 0 : 1;
      return out;
    };
  }
}

// ---------------------------------------------------------------- lpp

struct LppInput {
  int m = 2, n = 2;
  std::string weight = "exp";
  double rate = 1.0;
  double q = 0.5;
};

void add_lpp_options(CLI::App* s, LppInput& in) {
  opt(s, "--m", in.m, "rows");
  opt(s, "--n", in.n, "columns");
  opt(s, "--weight", in.weight, "exp|geom")->check(CLI::IsMember({"exp", "geom"}));
  opt(s, "--rate", in.rate, "exponential rate");
  opt(s, "--q", in.q, "geometric parameter");
}

WeightKind make_weight(const LppInput& in) {
  return in.weight == "exp" ? WeightKind::exponential(in.rate) : WeightKind::geometric(in.q);
}

void add_lpp(CLI::App& app, Registry& reg) {
  auto* g = app.add_subcommand("lpp", "directed last-passage percolation");
  g->require_subcommand(1);

  {
    struct O { LppInput in; std::size_t samples = 1000; bool grid = false; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("sample", "passage times G(m,n)");
    add_lpp_options(s, o->in);
    opt(s, "--samples", o->samples, "number of grids");
    s->add_flag("--grid", o->grid, "print one full grid of weights and passage times");
    reg[s] = [o](const Context& ctx) {
      const WeightKind kind = make_weight(o->in);
      Outcome out;
      if (o->grid) {
        RandomState rng = ctx.setup_rng();
        const PassageGrid grid = sample_grid(o->in.m, o->in.n, kind, rng);
        std::vector<std::vector<double>> w, gg;
        out.table.header = {"i", "j", "weight", "G"};
        for (int i = 0; i < grid.m; ++i) {
          w.emplace_back();
          gg.emplace_back();
          for (int j = 0; j < grid.n; ++j) {
            w.back().push_back(grid.weights(i, j));
            gg.back().push_back(grid.g(i, j));
            out.table.rows.push_back({std::to_string(i + 1), std::to_string(j + 1),
                                      format_real(grid.weights(i, j)), format_real(grid.g(i, j))});
          }
        }
        out.results = {{"m", grid.m}, {"n", grid.n}, {"weights", w}, {"G", gg}};
        return out;
      }
      const int m = o->in.m, n = o->in.n;
      const auto xs = scalar_draws(ctx, ctx.seed, o->samples,
                                   [&](RandomState& rng) { return sample_corner(m, n, kind, rng); });
      out.results = {{"m", m}, {"n", n}, {"samples", xs.size()}, {"mean", mean(xs)}, {"variance", variance(xs)}};
      out.table.header = {"G"};
      for (double x : xs) out.table.rows.push_back({format_real(x)});
      return out;
    };
  }

  {
    struct O { LppInput in; std::size_t samples = 20000; double alpha = 0.001; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("bridge", "G(m,n) against the largest ensemble particle");
    add_lpp_options(s, o->in);
    opt(s, "--samples", o->samples, "draws on each side");
    opt(s, "--alpha", o->alpha, "level of the two-sample KS test");
    reg[s] = [o](const Context& ctx) {
      const WeightKind kind = make_weight(o->in);
      const int m = o->in.m, n = o->in.n;
      const int lo = std::min(m, n), hi = std::max(m, n);
      const EnsembleSpec spec = o->in.weight == "exp" ? EnsembleSpec::wishart(lo, hi)
                                                       : EnsembleSpec::meixner(lo, hi, o->in.q);
      const EnsembleSampler sampler(spec);
      const double scale = o->in.weight == "exp" ? o->in.rate : 1.0;
      const double shift = bridge_shift(kind, lo);
      const auto a = scalar_draws(ctx, ctx.seed, o->samples,
                                  [&](RandomState& rng) { return scale * sample_corner(m, n, kind, rng); });
      const auto b = scalar_draws(ctx, splitmix64(ctx.seed ^ 0xB1D6Eull), o->samples,
                                  [&](RandomState& rng) { return sampler.draw(rng).back() - shift; });
      const double ks = ks_two_sample(a, b);
      const double crit = ks_two_sample_critical(a.size(), b.size(), o->alpha);
      Outcome out;
      out.results = {{"ensemble", spec.name()}, {"shift", shift}, {"samples", a.size()},
                     {"lpp_mean", mean(a)}, {"ensemble_mean", mean(b)},
                     {"ks", ks}, {"critical", crit}, {"passed", ks <= crit}};
      out.status = ks <= crit ? 0 : 1;
      return out;
    };
  }
}

// ---------------------------------------------------------------- dominate

struct PosetInput {
  std::string elements;
  std::string less;
  std::string p1, p2;
  bool example = false;
};

void add_poset_options(CLI::App* s, PosetInput& in) {
  s->add_option("--elements", in.elements, "labels, comma separated, or a count");
  s->add_option("--less", in.less, "cover relations like a<b,a<c");
  s->add_option("--p1", in.p1, "first probability vector");
  s->add_option("--p2", in.p2, "second probability vector");
  s->add_flag("--example", in.example, "three-point biorthogonal pair on the containment order");
}

std::pair<FinitePoset, MeasurePair> make_poset(const PosetInput& in) {
  if (in.example) {
    const auto d = biorthogonal_counterexample();
    const auto l1 = biorthogonal_exact_law(d.phis.topRows(1), d.psis.topRows(1), d.space).law;
    const auto l2 = biorthogonal_exact_law(d.phis, d.psis, d.space).law;
    const ContainmentPoset cp = containment_poset(3, 1);
    std::vector<std::string> labels;
    for (const auto& s : cp.subsets) labels.push_back(join_labels(d.labels, s));
    std::vector<std::pair<int, int>> less;
    const int size = cp.poset.size();
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        if (i != j && cp.poset.leq(i, j)) less.emplace_back(i, j);
      }
    }
    MeasurePair pair{RVector::Zero(size), RVector::Zero(size)};
    for (int i = 0; i < size; ++i) {
      if (i < cp.lower_count) pair.p1(i) = l1.probability(cp.subsets[i]);
      else pair.p2(i) = l2.probability(cp.subsets[i]);
    }
    return {FinitePoset(labels, less), pair};
  }
  std::vector<std::string> labels;
  if (in.elements.find_first_not_of("0123456789 ") == std::string::npos && !in.elements.empty()) {
    const int count = std::stoi(in.elements);
    for (int i = 1; i <= count; ++i) labels.push_back(std::to_string(i));
  } else {
    std::stringstream ss(in.elements);
    std::string item;
    while (std::getline(ss, item, ',')) labels.push_back(item);
  }
  if (labels.empty()) throw ArgumentError("give --elements or --example");
  auto index = [&](const std::string& name) {
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw ArgumentError("unknown element '" + name + "'");
    return static_cast<int>(it - labels.begin());
  };
  std::vector<std::pair<int, int>> less;
  std::stringstream ss(in.less);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) continue;
    const auto pos = item.find('<');
    if (pos == std::string::npos) throw ArgumentError("relation must look like a<b: '" + item + "'");
    less.emplace_back(index(item.substr(0, pos)), index(item.substr(pos + 1)));
  }
  const auto p1 = parse_reals(in.p1), p2 = parse_reals(in.p2);
  MeasurePair pair{Eigen::Map<const RVector>(p1.data(), static_cast<Index>(p1.size())),
                   Eigen::Map<const RVector>(p2.data(), static_cast<Index>(p2.size()))};
  FinitePoset poset(labels, less);
  pair.validate(poset);
  return {poset, pair};
}

std::vector<std::string> labels_of(const FinitePoset& p, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(p.label(i));
  return out;
}

Json lyons_json(const LyonsReport& r) {
  return {{"ground", r.ground}, {"rank", r.rank}, {"flow_feasible", r.flow_feasible},
          {"flow_value", r.flow_value}, {"exhaustive", r.exhaustive}, {"families", r.families},
          {"family_margin", r.family_margin}, {"margin", r.margin}, {"passed", r.passed}};
}

void add_dominate(CLI::App& app, Registry& reg) {
  auto* g = app.add_subcommand("dominate", "stochastic dominance checks");
  g->require_subcommand(1);

  {
    struct O { PosetInput in; std::string method = "flow"; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("exact", "is p1 dominated by p2 on a finite poset");
    add_poset_options(s, o->in);
    opt(s, "--method", o->method, "enumerate|flow")->check(CLI::IsMember({"enumerate", "flow"}));
    reg[s] = [o](const Context&) {
      const auto [poset, pair] = make_poset(o->in);
      const auto r = dominance_exact(poset, pair,
                                     o->method == "flow" ? DominanceMethod::Flow : DominanceMethod::Enumerate);
      Outcome out;
      out.results = {{"check", "dominance"}, {"verdict", r.dominated ? "dominated" : "not-dominated"},
                     {"margin", r.margin}, {"witness", labels_of(poset, r.witness)}};
      out.status = r.dominated ? 0 : 1;
      return out;
    };
  }

  {
    auto o = std::make_shared<PosetInput>();
    auto* s = g->add_subcommand("flow", "monotone coupling by max-flow");
    add_poset_options(s, *o);
    reg[s] = [o](const Context&) {
      const auto [poset, pair] = make_poset(*o);
      const auto r = strassen_flow(poset, pair);
      Outcome out;
      Json coupling = Json::array();
      out.table.header = {"from", "to", "mass"};
      for (const auto& [ij, mass] : r.coupling) {
        coupling.push_back({{"from", poset.label(ij.first)}, {"to", poset.label(ij.second)}, {"mass", mass}});
        out.table.rows.push_back({poset.label(ij.first), poset.label(ij.second), format_real(mass)});
      }
      out.results = {{"check", "coupling"}, {"verdict", r.feasible ? "feasible" : "infeasible"},
                     {"flow_value", r.flow_value}, {"coupling", coupling},
                     {"witness", labels_of(poset, r.witness)}};
      out.status = r.feasible ? 0 : 1;
      return out;
    };
  }

  {
    struct O { int ground = 4; int rank = 1; int trials = 20; std::size_t cap = 12; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("lyons", "rank n against rank n+1 projection laws on random frames");
    opt(s, "--ground", o->ground, "number of points");
    opt(s, "--rank", o->rank, "n, the smaller rank");
    opt(s, "--trials", o->trials, "number of random frames");
    opt(s, "--family-cap", o->cap, "run the family check when C(ground, rank) <= this");
    reg[s] = [o](const Context& ctx) {
      Json reports = Json::array();
      double worst = std::numeric_limits<double>::infinity();
      bool all = true;
      Json failed = Json::array();
      for (int t = 0; t < o->trials; ++t) {
        RandomState rng = derive_substream(ctx.seed, static_cast<std::uint64_t>(t));
        const auto r = verify_lyons(random_frame(o->ground, o->rank + 1, rng), o->cap);
        worst = std::min(worst, r.margin);
        all = all && r.passed;
        if (!r.passed) failed.push_back(t);
        reports.push_back(lyons_json(r));
      }
      Outcome out;
      out.results = {{"check", "lyons"}, {"verdict", all ? "pass" : "fail"}, {"trials", o->trials},
                     {"margin", worst}, {"reports", reports}};
      if (!all) out.results["witness"] = failed;  // failing trial indices
      out.status = all ? 0 : 1;
      return out;
    };
  }

  {
    struct O {
      std::string weight = "geometric";
      double q = 0.5, rate = 1.0;
      int particles = 2, cutoff = 10;
      std::string h = "meixner";
    };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("vandermonde", "squared Vandermonde laws reweighted by a monotone H");
    opt(s, "--weight", o->weight, "geometric|exponential")->check(CLI::IsMember({"geometric", "exponential"}));
    opt(s, "--q", o->q, "geometric parameter");
    opt(s, "--rate", o->rate, "exponential rate");
    opt(s, "--particles", o->particles, "number of particles");
    opt(s, "--cutoff", o->cutoff, "largest site T");
    opt(s, "--function", o->h, "H: meixner|sum|random")->check(CLI::IsMember({"meixner", "sum", "random"}));
    reg[s] = [o](const Context& ctx) {
      const VandermondeWeight w = o->weight == "geometric" ? VandermondeWeight::geometric(o->q)
                                                           : VandermondeWeight::exponential_grid(o->rate);
      ConfigFunction h;
      if (o->h == "meixner") {
        h = meixner_ratio_h;
      } else if (o->h == "sum") {
        h = [](const std::vector<int>& x) {
          double s = 1.0;
          for (int v : x) s += v;
          return s;
        };
      } else {
        RandomState rng = ctx.setup_rng();
        h = random_monotone_function(o->particles, o->cutoff, rng);
      }
      const auto r = verify_vandermonde(w, h, o->particles, o->cutoff, ctx.seed);
      Outcome out;
      out.results = {{"check", "vandermonde"}, {"verdict", r.feasible ? "dominated" : "not-dominated"},
                     {"particles", r.n}, {"cutoff", r.cutoff}, {"elements", r.elements},
                     {"translation_property", r.translation_property}, {"flow_value", r.flow_value},
                     {"margin", r.margin}, {"witness", r.witness}};
      out.status = r.feasible ? 0 : 1;
      return out;
    };
  }

  {
    struct O { std::string weights, f, g; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("ratio", "density-ratio criterion on a chain");
    s->add_option("--weights", o->weights, "base masses")->required();
    s->add_option("--f", o->f, "first density")->required();
    s->add_option("--g", o->g, "second density")->required();
    reg[s] = [o](const Context& ctx) {
      auto vec = [](const std::string& t) {
        const auto v = parse_reals(t);
        return RVector(Eigen::Map<const RVector>(v.data(), static_cast<Index>(v.size())));
      };
      const auto r = density_ratio_domination(vec(o->weights), vec(o->f), vec(o->g), ctx.tol);
      Outcome out;
      // A nondecreasing ratio f/g must give f dominating g.
      const bool ok = !r.ratio_nondecreasing || r.f_dominates_g;
      out.results = {{"check", "ratio"}, {"verdict", ok ? "pass" : "fail"}, {"margin", -r.max_violation},
                     {"ratio_nondecreasing", r.ratio_nondecreasing}, {"f_dominates_g", r.f_dominates_g},
                     {"g_dominates_f", r.g_dominates_f}};
      out.status = ok ? 0 : 1;
      return out;
    };
  }

  {
    struct O { std::string s1, s2; std::size_t samples = 100000; double delta = 0.01; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("empirical", "DKW-banded comparison of two samplers");
    s->add_option("--s1", o->s1, "first sampler, e.g. wishart:4,6")->required();
    s->add_option("--s2", o->s2, "second sampler, e.g. wishart:5,5")->required();
    opt(s, "--samples", o->samples, "draws from each sampler");
    opt(s, "--delta", o->delta, "total error probability");
    reg[s] = [o](const Context& ctx) {
      const auto a = scalar_draws(ctx, ctx.seed, o->samples, make_scalar_sampler(o->s1));
      const auto b = scalar_draws(ctx, splitmix64(ctx.seed ^ 0x5EC0DDull), o->samples, make_scalar_sampler(o->s2));
      const auto r = empirical_dominance(a, b, o->delta);
      Outcome out;
      out.results = {{"check", "empirical"}, {"verdict", to_string(r.verdict)}, {"d12", r.d12},
                     {"d21", r.d21}, {"band", r.band}, {"margin", r.margin}};
      out.status = r.verdict == EmpiricalVerdict::Dominates ? 0 : 1;
      return out;
    };
  }

  {
    struct O { int ground = 5; int rank = 2; int trials = 10; int points = 40; };
    auto o = std::make_shared<O>();
    auto* s = g->add_subcommand("identities", "determinant identities and the sign-matrix positivity check");
    opt(s, "--ground", o->ground, "number of points");
    opt(s, "--rank", o->rank, "n + 1, the number of frame rows");
    opt(s, "--trials", o->trials, "random frames and random positivity instances");
    opt(s, "--points", o->points, "Gauss-Laguerre points for the continuous identity");
    reg[s] = [o](const Context& ctx) {
      if (o->rank < 1 || o->ground <= o->rank - 1) throw ArgumentError("need 1 <= rank <= ground");
      const int n = o->rank - 1;
      double discrete = 0.0;
      double positivity = std::numeric_limits<double>::infinity();
      for (int t = 0; t < o->trials; ++t) {
        RandomState rng = derive_substream(ctx.seed, static_cast<std::uint64_t>(t));
        const ProjectionFrame frame = random_frame(o->ground, o->rank, rng);
        for_each_combination(o->ground, n, [&](const Configuration& a) {
          discrete = std::max(discrete, detequality_discrete(frame, a));
        });
        CVector phi(o->ground);
        for (auto& v : phi) v = Complex(rng.normal(), rng.normal());
        if (n >= 1) {
          const auto family = combinations(o->ground, n);
          const SignFunction eps = [](int x, const Configuration& a) {
            const auto r = std::lower_bound(a.begin(), a.end(), x) - a.begin();
            return r % 2 ? -1 : 1;
          };
          positivity = std::min(positivity, positivity_check(o->ground, phi, eps, family).min_eigenvalue);
        }
      }
      const QuadratureRule rule = gauss_laguerre(o->points);
      double continuous = 0.0;
      RandomState rng = ctx.setup_rng();
      for (int m = 1; m <= 2; ++m) {
        for (int t = 0; t < o->trials; ++t) {
          std::vector<double> x(static_cast<std::size_t>(m));
          for (auto& v : x) v = rng.exponential(0.5);
          continuous = std::max(continuous, detequality_continuous(m, rule, x));
        }
      }
      const bool pos_ok = !(positivity < -1e-10);
      const bool ok = discrete < 1e-12 && pos_ok && continuous < 1e-8;
      Outcome out;
      // Worst slack: the smallest eigenvalue, or minus the larger residual.
      const double margin = std::min({std::isfinite(positivity) ? positivity : 0.0, -discrete, -continuous});
      out.results = {{"check", "identities"}, {"verdict", ok ? "pass" : "fail"}, {"margin", margin},
                     {"residuals", {{"discrete", discrete}, {"continuous", continuous}}},
                     {"positivity_min_eigenvalue", std::isfinite(positivity) ? Json(positivity) : Json(nullptr)}};
      out.status = ok ? 0 : 1;
      return out;
    };
  }
}

// Appends `--key=value` for config keys not already given on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  for (const auto& [key, value] : read_config(path)) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given && key != "config") args.push_back(flag + "=" + value);
  }
  return args;
}

const CLI::App* leaf_of(const CLI::App& app) {
  const CLI::App* cur = &app;
  while (true) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) return cur;
    cur = subs.front();
  }
}

std::string command_path(const CLI::App* leaf) {
  std::string path;
  for (const CLI::App* a = leaf; a && a->get_parent(); a = a->get_parent()) {
    path = a->get_name() + (path.empty() ? "" : " " + path);
  }
  return path;
}

}  // namespace

std::uint64_t resolve_seed(const std::string& flag_value) {
  std::string text = flag_value;
  if (text.empty()) {
    const char* env = std::getenv("DPPLAB_SEED");
    if (env && *env) text = env;
  }
  if (text.empty()) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ArgumentError("seed must be an unsigned 64-bit integer: '" + text + "'");
  }
}

std::vector<std::vector<double>> run_replicas(
    std::uint64_t seed, int replicas, int jobs, std::size_t total,
    const std::function<std::vector<double>(RandomState&, std::size_t)>& draw) {
  return replicate<double>(seed, replicas, jobs, total, draw);
}

std::vector<double> merge_replicas(const std::vector<std::vector<double>>& parts) {
  auto out = concat(parts);
  std::sort(out.begin(), out.end());
  return out;
}

std::function<double(RandomState&)> make_scalar_sampler(const std::string& description) {
  const auto colon = description.find(':');
  if (colon == std::string::npos) throw ArgumentError("sampler must look like kind:args: '" + description + "'");
  const std::string kind = description.substr(0, colon);
  const auto a = parse_reals(description.substr(colon + 1));
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (a.size() < lo || a.size() > hi) throw ArgumentError("wrong number of arguments in '" + description + "'");
  };
  auto ensemble = [](const EnsembleSpec& spec) -> std::function<double(RandomState&)> {
    auto sampler = std::make_shared<EnsembleSampler>(spec);
    return [sampler](RandomState& rng) { return sampler->draw(rng).back(); };
  };
  const auto i = [&](std::size_t k) { return static_cast<int>(a.at(k)); };
  if (kind == "wishart") {
    need(2, 2);
    return ensemble(EnsembleSpec::wishart(i(0), i(1)));
  }
  if (kind == "jacobi") {
    need(3, 3);
    return ensemble(EnsembleSpec::jacobi(i(0), i(1), i(2)));
  }
  if (kind == "meixner") {
    need(3, 3);
    return ensemble(EnsembleSpec::meixner(i(0), i(1), a[2]));
  }
  if (kind == "exp") {
    need(1, 2);
    const double rate = a[0], shift = a.size() > 1 ? a[1] : 0.0;
    if (!(rate > 0)) throw DomainError("exp: rate must be positive");
    return [rate, shift](RandomState& rng) { return shift + rng.exponential(rate); };
  }
  if (kind == "lpp-exp") {
    need(2, 3);
    const WeightKind w = WeightKind::exponential(a.size() > 2 ? a[2] : 1.0);
    const int m = i(0), n = i(1);
    return [w, m, n](RandomState& rng) { return sample_corner(m, n, w, rng); };
  }
  if (kind == "lpp-geom") {
    need(3, 3);
    const WeightKind w = WeightKind::geometric(a[2]);
    const int m = i(0), n = i(1);
    return [w, m, n](RandomState& rng) { return sample_corner(m, n, w, rng); };
  }
  throw ArgumentError("unknown sampler kind '" + kind + "'");
}

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinantal point processes, spanning trees, ensembles, last passage and dominance", "dpplab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string seed_text, out_path, format = "json", config;
  Context ctx;
  bool timing = false;
  app.add_option("--seed", seed_text, "64-bit seed (default DPPLAB_SEED or 0xD5EED)");
  app.add_option("--replicas", ctx.replicas, "independent substreams for sampling")->capture_default_str();
  app.add_option("--jobs", ctx.jobs, "replicas run concurrently")->capture_default_str();
  app.add_option("--out", out_path, "write output to this file");
  app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--tol", ctx.tol, "numerical tolerance")->capture_default_str();
  app.add_option("--config", config, "key=value file; flags override it");
  app.add_flag("--timing", timing, "include wall time in the JSON output");

  Registry reg;
  add_dpp(app, reg);
  add_ust(app, reg);
  add_ensemble(app, reg);
  add_lpp(app, reg);
  add_dominate(app, reg);

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  }

  const CLI::App* leaf = leaf_of(app);
  const auto it = reg.find(leaf);
  if (it == reg.end()) {
    err << "error: incomplete command\n\n" << app.help();
    return 2;
  }
  try {
    ctx.seed = resolve_seed(seed_text);
    ctx.csv = format == "csv";
    const auto start = std::chrono::steady_clock::now();
    Outcome result = it->second(ctx);
    const auto stop = std::chrono::steady_clock::now();

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw ArgumentError("cannot write " + out_path);
    }
    std::ostream& sink = out_path.empty() ? out : file;
    if (ctx.csv && !result.table.empty()) {
      write_csv(sink, result.table);
    } else {
      if (ctx.csv) err << "note: this command has no tabular output; writing JSON\n";
      Json doc = {{"command", command_path(leaf)}, {"params", collect_params(*leaf)},
                  {"seed", ctx.seed}, {"results", result.results}};
      if (timing) doc["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
      sink << doc.dump(2) << '\n';
    }
    return result.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dpplab
