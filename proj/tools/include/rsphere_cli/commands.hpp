#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rsphere/error.hpp"
#include "rsphere/opgraph.hpp"
#include "rsphere/spectral_lab.hpp"
#include "rsphere_cli/csv.hpp"

namespace rsphere::cli {

/// Flags shared by every subcommand.
struct GlobalOptions {
  Tolerances tol = kDefaultTolerances;
  std::uint64_t seed = 20240101;
  int steps = 200;
};

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParse = 2,
  kDomain = 3,
  kIndex = 4,
};

int exit_code_for(Errc code) noexcept;

struct GeodesicOutput {
  SweepTable table; ///< t, dist_to_origin, sin_law
  std::vector<ComplexMatrix> points;
};
GeodesicOutput cmd_geodesic(const ComplexMatrix &a, const std::vector<double> &grid,
                            const GlobalOptions &opt);

struct LogmapOutput {
  std::string branch; ///< "closed-form" or "general"
  ComplexMatrix generator;
  double dist;
};
LogmapOutput cmd_logmap(const ComplexMatrix &p, const ComplexMatrix &q,
                        const GlobalOptions &opt);

double cmd_dist(const ComplexMatrix &p, const ComplexMatrix &q, const GlobalOptions &opt);

ComplexMatrix cmd_graph_proj(const ComplexMatrix &t, bool inverse, const GlobalOptions &opt);

/// t, norm_A, norm_law, length_so_far, dist_to_end on t = j / samples.
SweepTable cmd_deform(const ComplexMatrix &t, int samples, const GlobalOptions &opt);

/// t, truncated_norm, analytic_limit, subspace_gap.
SweepTable cmd_diffop(int max_frequency, const std::vector<double> &grid,
                      const GlobalOptions &opt);

ConjugateIndex cmd_jacobi(const ComplexMatrix &f, const GlobalOptions &opt);

DensifyResult cmd_density(const ComplexMatrix &q, double eps, const GlobalOptions &opt);

/// Randomized property checks; one line per check. Returns true when all pass.
bool cmd_selftest(const GlobalOptions &opt, std::ostream &out);

/// Full command line entry point used by the executable and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace rsphere::cli
