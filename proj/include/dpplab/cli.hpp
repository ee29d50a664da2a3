#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpplab/random.hpp"

namespace dpplab {

/// Runs the command line `args` (without the program name). Structured
/// output goes to `out` (or the --out file), diagnostics to `err`.
/// Returns 0 on success, 1 when a check fails, 2 on usage or precondition errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed from the flag value if given, else DPPLAB_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(const std::string& flag_value);

/// Splits `total` draws over `replicas` substreams of `seed`; replica i uses
/// derive_substream(seed, i) and gets total/replicas draws plus one if
/// i < total % replicas. Up to `jobs` replicas run at once. The result is
/// indexed by replica, so it does not depend on `jobs`.
std::vector<std::vector<double>> run_replicas(
    std::uint64_t seed, int replicas, int jobs, std::size_t total,
    const std::function<std::vector<double>(RandomState&, std::size_t)>& draw);

/// Concatenation of replica outputs, sorted so that summaries do not depend
/// on the merge order.
std::vector<double> merge_replicas(const std::vector<std::vector<double>>& parts);

/// Draws one scalar from a sample description such as "wishart:4,6",
/// "jacobi:5,3,2", "meixner:2,2,0.5", "exp:1", "exp:1,1" (rate, shift),
/// "lpp-exp:m,n" or "lpp-geom:m,n,q". For ensembles the value is the
/// largest eigenvalue or rightmost particle.
std::function<double(RandomState&)> make_scalar_sampler(const std::string& description);

}  // namespace dpplab
