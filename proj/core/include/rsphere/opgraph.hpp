#pragma once

#include <optional>
#include <vector>

#include "rsphere/sphere.hpp"

namespace rsphere {

/// Projection onto Gr(T) = {(x, T x)}. Shares its evaluation with phi0_inv.
SphereProjection proj_graph(const ComplexMatrix &t, const Tolerances &tol = kDefaultTolerances);

/// Projection onto invGr(T) = {(T x, x)}.
SphereProjection proj_inv_graph(const ComplexMatrix &t,
                                const Tolerances &tol = kDefaultTolerances);

/// Checks that ker P_Gr(T) is spanned by the isometric column
/// (-T*, 1)(1 + T T*)^{-1/2}.
bool graph_perp_check(const ComplexMatrix &t, double tol);

struct GraphGeodesicReport {
  bool exists = false;
  bool unique = false;
  int dim_st = 0; ///< dim ker(1 + S* T)
  int dim_ts = 0; ///< dim ker(1 + T* S)
  /// smallest singular value counted as nonzero in either operator
  double smallest_retained = 0.0;
  /// largest singular value counted as zero, 0 if none
  double largest_discarded = 0.0;
};

GraphGeodesicReport geodesic_exists_graphs(const ComplexMatrix &s, const ComplexMatrix &t,
                                           double tol);

/// The geodesic from p0 to P_Gr(T) with lower-left block V arctan|T|.
Geodesic minimal_geodesic_to_graph(const ComplexMatrix &t);

/// A(t) = V tan(t arctan|T|), whose graph is the point at time t of the
/// minimal geodesic. Requires 0 <= t < 1.
ComplexMatrix deformation_schedule(const ComplexMatrix &t_op, double t);

struct OptimalityRow {
  double t0;
  double length; ///< polygonal length of the curve on [t0, 1]
  double dist;   ///< Finsler distance between its endpoints
};

struct OptimalityReport {
  double length = 0.0; ///< on [0, 1]
  double dist = 0.0;   ///< on [0, 1]
  double max_gap = 0.0;
  std::vector<OptimalityRow> rows;
};

/// Polygonal length of the minimal geodesic to Gr(T) on a uniform grid of
/// `samples` points, compared with the distance between endpoints for
/// t0 in {0, 0.1, ..., 0.9}.
OptimalityReport deformation_optimality_report(const ComplexMatrix &t, int samples);

/// Midpoint of a geodesic joining the two projections, when one exists.
std::optional<SphereProjection>
common_complement_witness(const SphereProjection &ps, const SphereProjection &pt,
                          const Tolerances &tol = kDefaultTolerances);

struct DensifyResult {
  SphereProjection point;
  double t0;
  double dist_to_target; ///< ||q0 - q||
  double dist_to_origin; ///< ||q0 - p0||
};

/// A point q0 on a geodesic from p0 to q with ||q0 - q|| < eps and
/// ||q0 - p0|| < 1.
DensifyResult densify(const SphereProjection &q, double eps,
                      const Tolerances &tol = kDefaultTolerances);

} // namespace rsphere
