#pragma once

#include "rsphere/matfun.hpp"

namespace rsphere {

/// Assembles [[a11, a12], [a21, a22]] from equally sized square blocks.
ComplexMatrix block_matrix(const ComplexMatrix &a11, const ComplexMatrix &a12,
                           const ComplexMatrix &a21, const ComplexMatrix &a22);

/// The symmetry diag(I, -I) of size 2n.
ComplexMatrix origin_symmetry(Eigen::Index n);

/// The block swap [[0, I], [I, 0]] of size 2n.
ComplexMatrix block_swap(Eigen::Index n);

/// A rank-n orthogonal projection on C^{2n}: a point of the unitary orbit
/// of diag(I, 0). Construction validates Hermitian, idempotent and trace
/// within the projection tolerance and rejects (never re-projects)
/// matrices that fail.
class SphereProjection {
public:
  static SphereProjection from_matrix(const ComplexMatrix &m,
                                      const Tolerances &tol = kDefaultTolerances);

  /// diag(I_n, 0_n)
  static SphereProjection origin(Eigen::Index n);

  const ComplexMatrix &matrix() const noexcept { return m_; }
  Eigen::Index n() const noexcept { return m_.rows() / 2; }

  auto p11() const { return m_.topLeftCorner(n(), n()); }
  auto p12() const { return m_.topRightCorner(n(), n()); }
  auto p21() const { return m_.bottomLeftCorner(n(), n()); }
  auto p22() const { return m_.bottomRightCorner(n(), n()); }

  /// 2p - 1
  ComplexMatrix symmetry() const;

private:
  explicit SphereProjection(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Tangent vector at diag(I, 0). Only the lower-left block a is stored;
/// the Hermitian form X = [[0, a*], [a, 0]] and the anti-Hermitian
/// generator X~ = [X, p0] = [[0, -a*], [a, 0]] are built on demand.
struct TangentVector {
  ComplexMatrix a;

  Eigen::Index n() const noexcept { return a.rows(); }
  ComplexMatrix hermitian() const;
  ComplexMatrix generator() const;
  double norm() const { return op_norm(a); }
};

/// Lower-left block of a p0-codiagonal matrix (Hermitian or anti-Hermitian).
TangentVector tangent_from_generator(const ComplexMatrix &generator);

} // namespace rsphere
