#include "rsphere/opgraph.hpp"

#include <algorithm>
#include <cmath>


#include "rsphere/error.hpp"

namespace rsphere {

namespace {

SvdFactors square_svd(const ComplexMatrix &a) {
  if (a.rows() != a.cols())
    throw Error(Errc::DimensionMismatch, "operator must be square");
  return svd_factors(a);
}

// L diag(f(s)) R* for a = L diag(s) R*
ComplexMatrix singular_map(const SvdFactors &svd, double (*f)(double, double), double arg) {
  Eigen::VectorXcd d(svd.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d(i) = f(svd.values(i), arg);
  return svd.left * d.asDiagonal() * svd.right.adjoint();
}

struct KernelCount {
  int dim;
  double smallest_retained;
  double largest_discarded;
};

KernelCount kernel_count(const ComplexMatrix &m, double tol) {
  RealVector s = singular_values(m);
  KernelCount out{0, 0.0, 0.0};
  const int rank = rank_eps(m, tol);
  out.dim = static_cast<int>(m.cols()) - rank;
  if (rank > 0)
    out.smallest_retained = s(rank - 1);
  if (rank < s.size())
    out.largest_discarded = s(rank);
  return out;
}

} // namespace

SphereProjection proj_graph(const ComplexMatrix &t, const Tolerances &tol) {
  return phi0_inv(t, tol);
}

SphereProjection proj_inv_graph(const ComplexMatrix &t, const Tolerances &tol) {
  ComplexMatrix swap = block_swap(t.rows());
  return SphereProjection::from_matrix(swap * proj_graph(t, tol).matrix() * swap, tol);
}

bool graph_perp_check(const ComplexMatrix &t, double tol) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n)
    throw Error(Errc::DimensionMismatch, "operator must be square");
  ComplexMatrix root_inv = herm_fun(identity(n) + t * t.adjoint(),
                                    [](double x) { return 1.0 / std::sqrt(x); });
  ComplexMatrix column(2 * n, n);
  column << -t.adjoint() * root_inv, root_inv;
  ComplexMatrix complement = identity(2 * n) - proj_graph(t).matrix();
  const double scale = std::max(1.0, op_norm(t));
  return op_norm(column.adjoint() * column - identity(n)) <= tol * scale &&
         op_norm(complement - column * column.adjoint()) <= tol * scale;
}

GraphGeodesicReport geodesic_exists_graphs(const ComplexMatrix &s, const ComplexMatrix &t,
                                           double tol) {
  const Eigen::Index n = s.rows();
  if (s.cols() != n || t.rows() != n || t.cols() != n)
    throw Error(Errc::DimensionMismatch, "S and T must be square of equal size");
  KernelCount st = kernel_count(identity(n) + s.adjoint() * t, tol);
  KernelCount ts = kernel_count(identity(n) + t.adjoint() * s, tol);
  GraphGeodesicReport report;
  report.dim_st = st.dim;
  report.dim_ts = ts.dim;
  report.exists = st.dim == ts.dim;
  report.unique = st.dim == 0 && ts.dim == 0;
  report.smallest_retained = std::min(st.smallest_retained, ts.smallest_retained);
  report.largest_discarded = std::max(st.largest_discarded, ts.largest_discarded);
  return report;
}

Geodesic minimal_geodesic_to_graph(const ComplexMatrix &t) {
  SvdFactors svd = square_svd(t);
  return Geodesic::from_origin(
      {singular_map(svd, [](double s, double) { return std::atan(s); }, 0.0)});
}

ComplexMatrix deformation_schedule(const ComplexMatrix &t_op, double t) {
  if (!(t >= 0.0 && t < 1.0))
    throw Error(Errc::ParameterOutOfRange, "t must lie in [0, 1)");
  SvdFactors svd = square_svd(t_op);
  return singular_map(
      svd, [](double s, double time) { return std::tan(time * std::atan(s)); }, t);
}

OptimalityReport deformation_optimality_report(const ComplexMatrix &t, int samples) {
  if (samples < 2)
    throw Error(Errc::InvalidArgument, "at least two samples are needed");
  Geodesic curve = minimal_geodesic_to_graph(t);
  const int last = samples - 1;
  std::vector<ComplexMatrix> points(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k)
    points[static_cast<std::size_t>(k)] =
        curve.matrix_at(static_cast<double>(k) / static_cast<double>(last));

  // suffix[k]: polygonal length from sample k to the end
  std::vector<double> suffix(static_cast<std::size_t>(samples), 0.0);
  for (int k = last - 1; k >= 0; --k)
    suffix[static_cast<std::size_t>(k)] =
        suffix[static_cast<std::size_t>(k) + 1] +
        op_norm(points[static_cast<std::size_t>(k) + 1] - points[static_cast<std::size_t>(k)]);

  SphereProjection end = SphereProjection::from_matrix(points.back());
  OptimalityReport report;
  for (int j = 0; j < 10; ++j) {
    const int k = j * last / 10;
    OptimalityRow row;
    row.t0 = static_cast<double>(k) / static_cast<double>(last);
    row.length = suffix[static_cast<std::size_t>(k)];
    row.dist = finsler_dist(SphereProjection::from_matrix(points[static_cast<std::size_t>(k)]),
                            end);
    report.max_gap = std::max(report.max_gap, std::abs(row.length - row.dist));
    report.rows.push_back(row);
  }
  report.length = report.rows.front().length;
  report.dist = report.rows.front().dist;
  return report;
}

std::optional<SphereProjection>
common_complement_witness(const SphereProjection &ps, const SphereProjection &pt,
                          const Tolerances &tol) {
  if (ps.n() != pt.n() ||
      std::abs(ps.matrix().trace().real() - pt.matrix().trace().real()) > 0.5)
    throw Error(Errc::TraceMismatch, "projections have different rank");
  IntersectionBases bases = intersection_bases(ps, pt);
  if (bases.range_kernel.cols() != bases.kernel_range.cols())
    return std::nullopt;
  return connecting_geodesic(ps, pt, tol).at(0.5, tol);
}

DensifyResult densify(const SphereProjection &q, double eps, const Tolerances &tol) {
  if (!(eps > 0.0))
    throw Error(Errc::ParameterOutOfRange, "eps must be positive");
  const SphereProjection origin = SphereProjection::origin(q.n());
  Geodesic path = connecting_geodesic(origin, q, tol);
  const double speed = path.speed();
  double t0 = 0.0;
  if (speed > 0.0) {
    // Backing off by a relative 1e-6 keeps both inequalities strict.
    const double back = std::asin(std::min(eps, 1.0)) / speed * (1.0 - 1e-6);
    t0 = std::max(0.0, 1.0 - back);
  }
  SphereProjection point = t0 == 0.0 ? origin : path.at(t0, tol);
  return {point, t0, op_norm(point.matrix() - q.matrix()),
          op_norm(point.matrix() - origin.matrix())};
}

} // namespace rsphere
