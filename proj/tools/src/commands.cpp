#include "rsphere_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <CLI11.hpp>

#include "rsphere/error.hpp"
#include "rsphere/hopf.hpp"
#include "rsphere/sampling.hpp"
#include "rsphere_cli/matrix_io.hpp"

namespace rsphere::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<double> default_grid(int last_tenth) {
  std::vector<double> grid;
  for (int k = 0; k <= last_tenth; ++k)
    grid.push_back(k / 10.0);
  return grid;
}

void require_square(const ComplexMatrix &m, const char *what) {
  if (m.rows() != m.cols())
    throw Error(Errc::DimensionMismatch, std::string(what) + " must be square");
}

double max_entry(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// e^{X~} for X~ = [[0, -a*], [a, 0]] in closed form.
ComplexMatrix rotation_of(const ComplexMatrix &a) {
  auto cos_root = [](double x) { return std::cos(std::sqrt(std::max(x, 0.0))); };
  auto sinc_root = [](double x) { return sinc(std::sqrt(std::max(x, 0.0))); };
  const ComplexMatrix low = a.adjoint() * a, high = a * a.adjoint();
  return block_matrix(herm_fun(low, cos_root), -a.adjoint() * herm_fun(high, sinc_root),
                      a * herm_fun(low, sinc_root), herm_fun(high, cos_root));
}

struct Check {
  std::string name;
  double error;
  double bound;
};

} // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
  case Errc::ParseError:
    return kParse;
  case Errc::IndexNonZero:
    return kIndex;
  default:
    return kDomain;
  }
}

GeodesicOutput cmd_geodesic(const ComplexMatrix &a, const std::vector<double> &grid,
                            const GlobalOptions &opt) {
  require_square(a, "a");
  const TangentVector x{a};
  const double speed = x.norm();
  const ComplexMatrix origin = SphereProjection::origin(a.rows()).matrix();
  GeodesicOutput out;
  out.table.columns = {"t", "dist_to_origin", "sin_law"};
  for (double t : sorted(grid)) {
    SphereProjection point = geodesic_eval(x, t, opt.tol);
    out.table.add_row({t, op_norm(point.matrix() - origin), std::sin(std::abs(t) * speed)});
    out.points.push_back(point.matrix());
  }
  return out;
}

LogmapOutput cmd_logmap(const ComplexMatrix &p, const ComplexMatrix &q,
                        const GlobalOptions &opt) {
  SphereProjection from = SphereProjection::from_matrix(p, opt.tol);
  SphereProjection to = SphereProjection::from_matrix(q, opt.tol);
  if (from.n() != to.n())
    throw Error(Errc::DimensionMismatch, "p and q have different sizes");
  LogmapOutput out;
  const bool at_origin =
      max_entry(from.matrix() - SphereProjection::origin(from.n()).matrix()) <=
      opt.tol.projection;
  if (at_origin) {
    try {
      out.generator = log_p0(to, opt.tol).generator();
      out.branch = "closed-form";
    } catch (const Error &e) {
      if (e.code() != Errc::OutsideLogDomain)
        throw;
    }
  }
  if (out.branch.empty()) {
    out.generator = log_general(from, to, 1e-10, opt.tol);
    out.branch = "general";
  }
  out.dist = op_norm(out.generator);
  return out;
}

double cmd_dist(const ComplexMatrix &p, const ComplexMatrix &q, const GlobalOptions &opt) {
  return finsler_dist(SphereProjection::from_matrix(p, opt.tol),
                      SphereProjection::from_matrix(q, opt.tol), opt.tol);
}

ComplexMatrix cmd_graph_proj(const ComplexMatrix &t, bool inverse, const GlobalOptions &opt) {
  require_square(t, "T");
  return (inverse ? proj_inv_graph(t, opt.tol) : proj_graph(t, opt.tol)).matrix();
}

SweepTable cmd_deform(const ComplexMatrix &t, int samples, const GlobalOptions &opt) {
  require_square(t, "T");
  if (samples < 2)
    throw Error(Errc::ParameterOutOfRange, "samples must be at least 2");
  const Geodesic curve = minimal_geodesic_to_graph(t);
  const SphereProjection end = proj_graph(t, opt.tol);
  const double angle = std::atan(op_norm(t));
  SweepTable table;
  table.columns = {"t", "norm_A", "norm_law", "length_so_far", "dist_to_end"};
  double length = 0.0;
  ComplexMatrix previous = curve.matrix_at(0.0);
  for (int j = 0; j < samples; ++j) {
    const double s = static_cast<double>(j) / samples;
    const ComplexMatrix point = curve.matrix_at(s);
    length += op_norm(point - previous);
    previous = point;
    table.add_row({s, op_norm(deformation_schedule(t, s)), std::tan(s * angle), length,
                   finsler_dist(SphereProjection::from_matrix(point, opt.tol), end, opt.tol)});
  }
  return table;
}

SweepTable cmd_diffop(int max_frequency, const std::vector<double> &grid,
                      const GlobalOptions &opt) {
  const FourierTruncation trunc(max_frequency);
  const Geodesic curve = diff_geodesic(trunc);
  SweepTable table;
  table.columns = {"t", "truncated_norm", "analytic_limit", "subspace_gap"};
  for (double t : sorted(grid)) {
    const NormGrowth growth = norm_growth(trunc, t);
    const double gap =
        op_norm(curve.matrix_at(t) - proj_graph(deformation_T(trunc, t), opt.tol).matrix());
    table.add_row({t, growth.truncated_norm, growth.analytic_limit, gap});
  }
  return table;
}

ConjugateIndex cmd_jacobi(const ComplexMatrix &f, const GlobalOptions &opt) {
  return conjugate_index(f, opt.tol);
}

DensifyResult cmd_density(const ComplexMatrix &q, double eps, const GlobalOptions &opt) {
  return densify(SphereProjection::from_matrix(q, opt.tol), eps, opt.tol);
}

bool cmd_selftest(const GlobalOptions &opt, std::ostream &out) {
  Sampler rng(opt.seed);
  std::vector<Check> checks;

  double round_trip = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TangentVector x{rng.block_with_norm(1 + k % 4, rng.uniform(0.0, kPi / 4 - 1e-3))};
    round_trip = std::max(round_trip, max_entry(log_p0(exp_p0(x, opt.tol), opt.tol).a - x.a));
  }
  checks.push_back({"exp_log_round_trip", round_trip, 1e-8});

  double distance_law = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TangentVector x{rng.block_with_norm(1 + k % 4, rng.uniform(0.1, kPi))};
    const double t = rng.uniform(0.0, 1.0), s = rng.uniform(0.0, 1.0);
    const double arg = std::min(std::abs(t - s) * x.norm(), kPi / 2);
    const double ts = s + std::copysign(arg / x.norm(), t - s);
    distance_law = std::max(distance_law, std::abs(op_norm(geodesic_matrix(x, ts) -
                                                           geodesic_matrix(x, s)) -
                                                   std::sin(arg)));
  }
  checks.push_back({"distance_law", distance_law, 1e-9});

  double equivariance = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Eigen::Index n = 1 + k % 4;
    const SphereVector x = SphereVector::from_stacked(rng.unitary(2 * n).leftCols(n));
    const ComplexMatrix u = rng.unitary(n);
    equivariance = std::max(equivariance, max_entry(hopf(x.times(u)).matrix() - hopf(x).matrix()));
  }
  checks.push_back({"hopf_equivariance", equivariance, 1e-10});

  int disagreements = 0;
  for (int k = 0; k < 100; ++k) {
    if (!chart_status(rng.projection(1 + k % 4), opt.tol.rank).consistent())
      ++disagreements;
  }
  checks.push_back({"chart_status_agreement", static_cast<double>(disagreements), 0.5});

  const TangentVector x{rng.block_with_norm(3, 1.2)};
  std::vector<SphereProjection> path;
  for (int k = 0; k <= 2 * opt.steps; ++k)
    path.push_back(geodesic_eval(x, static_cast<double>(k) / (2 * opt.steps), opt.tol));
  const TransportResult transport = parallel_transport(path, 1.0, opt.steps);
  checks.push_back({"parallel_transport", op_norm(transport.unitary - rotation_of(x.a)), 1e-6});

  bool all = true;
  for (const Check &c : checks) {
    const bool pass = c.error < c.bound;
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << c.name << " error=" << format_value(c.error)
        << " bound=" << format_value(c.bound) << '\n';
  }
  return all;
}

namespace {

void emit_density(std::ostream &out, const DensifyResult &r) {
  out << "{\"t0\": " << format_exact(r.t0)
      << ", \"dist_to_target\": " << format_exact(r.dist_to_target)
      << ", \"dist_to_origin\": " << format_exact(r.dist_to_origin)
      << ", \"point\": " << to_json(r.point.matrix()) << "}\n";
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Geometry of the projective line over matrix algebras", "rsphere"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  std::optional<double> tol;
  app.add_option("--tol", tol, "Overrides the rank and membership tolerances")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized checks");
  app.add_option("--steps", opt.steps, "RK4 steps of the transport integrator")
      ->check(CLI::Range(1, 1000000));

  std::string a_src, p_src, q_src, t_src, f_src, matrices_path;
  std::vector<double> grid;
  int samples = 10, max_frequency = 64;
  double eps = 0.1;
  bool inverse = false;

  auto *geodesic = app.add_subcommand("geodesic", "Sample the geodesic from the origin");
  geodesic->add_option("--a", a_src, "Lower-left block (JSON or file)")->required();
  geodesic->add_option("--t,--grid", grid, "Times, comma separated")->delimiter(',');
  geodesic->add_option("--matrices", matrices_path, "Write the sampled points as JSON");

  auto *logmap = app.add_subcommand("logmap", "Generator of a geodesic from p to q");
  logmap->add_option("--p", p_src, "Start projection")->required();
  logmap->add_option("--q", q_src, "End projection")->required();

  auto *dist = app.add_subcommand("dist", "Finsler distance between two projections");
  dist->add_option("--p", p_src)->required();
  dist->add_option("--q", q_src)->required();

  auto *graph = app.add_subcommand("graph-proj", "Projection onto the graph of T");
  graph->add_option("--T", t_src, "Operator (JSON or file)")->required();
  graph->add_flag("--inverse", inverse, "Use the inverse graph {(Tx, x)}");

  auto *deform = app.add_subcommand("deform", "Sweep the optimal bounded deformation of T");
  deform->add_option("--T", t_src)->required();
  deform->add_option("--samples", samples, "Grid points in [0, 1)")->check(CLI::Range(2, 1 << 24));

  auto *diffop = app.add_subcommand("diffop", "Truncated differentiation operator sweep");
  diffop->add_option("--N", max_frequency, "Highest Fourier frequency")
      ->check(CLI::Range(1, 4096));
  diffop->add_option("--t,--grid", grid)->delimiter(',');

  auto *jacobi = app.add_subcommand("jacobi", "Kernel dimension and conjugate index of F");
  jacobi->add_option("--F", f_src)->required();

  auto *density = app.add_subcommand("density", "Point near q within distance 1 of the origin");
  density->add_option("--q", q_src)->required();
  density->add_option("--eps", eps, "Target distance to q")->check(CLI::PositiveNumber);

  auto *selftest = app.add_subcommand("selftest", "Randomized property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }
  if (tol) {
    opt.tol.rank = *tol;
    opt.tol.membership = *tol;
  }

  try {
    if (geodesic->parsed()) {
      GeodesicOutput g = cmd_geodesic(load_matrix(a_src), grid.empty() ? default_grid(10) : grid,
                                      opt);
      write_csv(out, g.table);
      if (!matrices_path.empty()) {
        std::ofstream file(matrices_path);
        if (!file)
          throw Error(Errc::ParseError, "cannot write '" + matrices_path + "'");
        file << to_json(g.points) << '\n';
      }
    } else if (logmap->parsed()) {
      LogmapOutput l = cmd_logmap(load_matrix(p_src), load_matrix(q_src), opt);
      out << "{\"branch\": \"" << l.branch << "\", \"dist\": " << format_exact(l.dist)
          << ", \"generator\": " << to_json(l.generator) << "}\n";
    } else if (dist->parsed()) {
      SweepTable t{{"dist"}, {}};
      t.add_row({cmd_dist(load_matrix(p_src), load_matrix(q_src), opt)});
      write_csv(out, t);
    } else if (graph->parsed()) {
      out << to_json(cmd_graph_proj(load_matrix(t_src), inverse, opt)) << '\n';
    } else if (deform->parsed()) {
      write_csv(out, cmd_deform(load_matrix(t_src), samples, opt));
    } else if (diffop->parsed()) {
      write_csv(out, cmd_diffop(max_frequency, grid.empty() ? default_grid(9) : grid, opt));
    } else if (jacobi->parsed()) {
      ConjugateIndex c = cmd_jacobi(load_matrix(f_src), opt);
      SweepTable t{{"kernel_dim", "index"}, {}};
      t.add_row({static_cast<double>(c.kernel_dim), static_cast<double>(c.index)});
      write_csv(out, t);
    } else if (density->parsed()) {
      emit_density(out, cmd_density(load_matrix(q_src), eps, opt));
    } else if (selftest->parsed()) {
      return cmd_selftest(opt, out) ? kOk : kCheckFailed;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kOk;
}

} // namespace rsphere::cli
