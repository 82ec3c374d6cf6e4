#pragma once

#include <vector>

#include "rsphere/hopf.hpp"
#include "rsphere/matfun.hpp"
#include "rsphere/projection.hpp"

namespace rsphere {

/// Four independent tests of membership in the principal chart domain V0.
struct ChartStatus {
  bool regular_basis = false;   ///< ran p has a basis [w1; w2] with w1 invertible
  bool graph_of_chart = false;  ///< p = P_Gr(phi0(p))
  bool near_origin = false;     ///< ||p - p0|| < 1
  bool top_invertible = false;  ///< p11 invertible

  bool all() const { return regular_basis && graph_of_chart && near_origin && top_invertible; }
  bool none() const {
    return !regular_basis && !graph_of_chart && !near_origin && !top_invertible;
  }
  bool consistent() const { return all() || none(); }
};

/// `tol` bounds the smallest eigenvalue of p11 that still counts as
/// invertible; the other three tests use thresholds equivalent to it.
ChartStatus chart_status(const SphereProjection &p, double tol = 1e-8);

/// Affine coordinate x2 x1^{-1} of p, for p with invertible p11.
ComplexMatrix phi0(const SphereProjection &p, const Tolerances &tol = kDefaultTolerances);

/// Projection onto the graph {(x, a x)}.
SphereProjection phi0_inv(const ComplexMatrix &a, const Tolerances &tol = kDefaultTolerances);

/// Moebius map (e + f a)(c + d a)^{-1} with [[c, d], [e, f]] = (u v)*.
ComplexMatrix chart_transition(const ComplexMatrix &u, const ComplexMatrix &v,
                               const ComplexMatrix &a,
                               const Tolerances &tol = kDefaultTolerances);

/// Closed form of e^{tX~} p0 e^{-tX~}. With a the lower-left block of X
/// the moving column is x1 = cos(t|a|), x2 = t a sinc(t|a|), and the
/// projection is x x*.
SphereProjection geodesic_eval(const TangentVector &x, double t,
                               const Tolerances &tol = kDefaultTolerances);

/// Same matrix as geodesic_eval without the projection validation.
ComplexMatrix geodesic_matrix(const TangentVector &x, double t);

SphereProjection exp_p0(const TangentVector &x, const Tolerances &tol = kDefaultTolerances);

/// Inverse of exp_p0 on {lambda_min(p11) > 1/2}, i.e. on projections whose
/// principal angles with p0 are all below pi/4.
TangentVector log_p0(const SphereProjection &p, const Tolerances &tol = kDefaultTolerances);

/// Anti-Hermitian X~ with e^{X~} p e^{-X~} = q, from the principal
/// logarithm of (2q - 1)(2p - 1). Requires ||p - q|| < 1 - gap.
ComplexMatrix log_general(const SphereProjection &p, const SphereProjection &q,
                          double gap = 1e-10,
                          const Tolerances &tol = kDefaultTolerances);

double finsler_dist(const SphereProjection &p, const SphereProjection &q,
                    const Tolerances &tol = kDefaultTolerances);

struct AngleParts {
  ComplexMatrix phi; ///< arccos of the positive top block of the section
  ComplexMatrix w;   ///< partial isometry of the bottom block
};

AngleParts angle(const SphereProjection &p, const Tolerances &tol = kDefaultTolerances);

/// Polar parts of the commutator [p0, p].
PolarParts complementary_cross_ratio(const SphereProjection &p,
                                     const Tolerances &tol = kDefaultTolerances);

struct TransportResult {
  ComplexMatrix unitary;
  /// ||g_steps - g_{steps/2}|| / 15, or NaN when steps is odd
  double error_estimate;
};

/// Integrates g' = [p', p] g, g(0) = I, along uniformly spaced samples
/// of a path on [0, duration] with classical RK4. Each step spans an even
/// number of sample intervals so that its midpoint is a sample; p' comes
/// from fourth-order finite differences. Requires
/// (samples.size() - 1) to be a multiple of 2 * steps.
TransportResult parallel_transport(const std::vector<SphereProjection> &samples,
                                   double duration, int steps);

/// Differential of phi0 at p applied to the tangent Y.
ComplexMatrix tangent_chart(const SphereProjection &p, const ComplexMatrix &y,
                            const Tolerances &tol = kDefaultTolerances);

/// Tangent at phi0_inv(a) of the curve s -> phi0_inv(a + s adot).
ComplexMatrix tangent_chart_inv(const ComplexMatrix &a, const ComplexMatrix &adot,
                                const Tolerances &tol = kDefaultTolerances);

double finsler_pullback_norm(const ComplexMatrix &a, const ComplexMatrix &adot,
                             const Tolerances &tol = kDefaultTolerances);

/// Block form of m relative to a projection p that u conjugates onto its
/// complement. Blocks are compressed to an orthonormal basis of ran p, so
/// the result has size 2r for r = rank p.
ComplexMatrix rsp_isomorphism(const ComplexMatrix &m, const ComplexMatrix &p,
                              const ComplexMatrix &u,
                              const Tolerances &tol = kDefaultTolerances);

/// Inverse of rsp_isomorphism for the same p and u.
ComplexMatrix rsp_inverse(const ComplexMatrix &blocks, const ComplexMatrix &p,
                          const ComplexMatrix &u,
                          const Tolerances &tol = kDefaultTolerances);

/// Unitary F with F p0 F* = p: columns are eigenvectors of p (range first),
/// each with its largest-magnitude entry made real and positive.
ComplexMatrix projection_frame(const SphereProjection &p);

/// t -> F exp_p0-geodesic(t) F*, where F is a frame of the base.
class Geodesic {
public:
  static Geodesic from_origin(TangentVector x);
  /// `generator` must be anti-Hermitian and codiagonal with respect to base.
  static Geodesic from_generator(const SphereProjection &base,
                                 const ComplexMatrix &generator,
                                 const Tolerances &tol = kDefaultTolerances);

  SphereProjection at(double t, const Tolerances &tol = kDefaultTolerances) const;
  ComplexMatrix matrix_at(double t) const;

  const SphereProjection &base() const noexcept { return base_; }
  const ComplexMatrix &frame() const noexcept { return frame_; }
  /// Generator in the frame of the base.
  const TangentVector &local() const noexcept { return local_; }
  /// Anti-Hermitian generator in ambient coordinates.
  ComplexMatrix generator() const;
  double speed() const { return local_.norm(); }

private:
  Geodesic(SphereProjection base, ComplexMatrix frame, TangentVector local, bool trivial_frame)
      : base_(std::move(base)), frame_(std::move(frame)), local_(std::move(local)),
        trivial_frame_(trivial_frame) {}

  SphereProjection base_;
  ComplexMatrix frame_;
  TangentVector local_;
  bool trivial_frame_; ///< frame_ is the identity, so no conjugation is needed
};

/// Geodesic from p to q of speed at most pi/2 built from the two-subspace
/// decomposition: ran p & ker q is rotated onto ker p & ran q by a quarter
/// turn, the remaining part is joined by log_general. `from` and `to` are
/// orthonormal bases of the two intersections, paired by the unitary
/// `pairing` (from[:, j] travels to to * pairing).
Geodesic connecting_geodesic(const SphereProjection &p, const SphereProjection &q,
                             const ComplexMatrix &from, const ComplexMatrix &to,
                             const ComplexMatrix &pairing,
                             const Tolerances &tol = kDefaultTolerances);

/// Same with the intersections computed from the spectrum of p - q and
/// the identity pairing. Throws NoGeodesicFound if their dimensions differ.
Geodesic connecting_geodesic(const SphereProjection &p, const SphereProjection &q,
                             const Tolerances &tol = kDefaultTolerances);

/// Orthonormal bases of ran p & ker q and of ker p & ran q.
struct IntersectionBases {
  ComplexMatrix range_kernel;
  ComplexMatrix kernel_range;
};
IntersectionBases intersection_bases(const SphereProjection &p, const SphereProjection &q,
                                     double threshold = 1e-10);

} // namespace rsphere
