#pragma once

#include "rsphere/matfun.hpp"
#include "rsphere/projection.hpp"

namespace rsphere {

/// A column (x1, x2) of two n x n blocks. Points of the unitary sphere K
/// satisfy x1* x1 + x2* x2 = I; for A = M_n(C) that isometry condition is
/// all membership requires, since any isometry C^n -> C^{2n} extends to a
/// unitary of C^{2n}.
struct SphereVector {
  ComplexMatrix x1;
  ComplexMatrix x2;

  Eigen::Index n() const noexcept { return x1.rows(); }

  /// The 2n x n isometry [x1; x2].
  ComplexMatrix stacked() const;
  static SphereVector from_stacked(const ComplexMatrix &column);

  /// Right action x -> x u of the structure group.
  SphereVector times(const ComplexMatrix &u) const;

  /// e1 = (I, 0)
  static SphereVector base_point(Eigen::Index n);
};

/// A vector xi = (xi1, xi2) tangent to K at base.
struct TangentAtSphere {
  SphereVector base;
  ComplexMatrix xi1;
  ComplexMatrix xi2;

  ComplexMatrix stacked() const;
};

/// <x, y> = x1* y1 + x2* y2, the A-valued inner product of A^2.
ComplexMatrix module_inner(const ComplexMatrix &x, const ComplexMatrix &y);

/// ||<x, x>||^{1/2}, the norm of x as an element of the module A^2.
double module_norm(const ComplexMatrix &x);

bool in_sphere(const ComplexMatrix &x1, const ComplexMatrix &x2,
               double tol = kDefaultTolerances.membership);

/// h(x) = x x*.
SphereProjection hopf(const SphereVector &x, const Tolerances &tol = kDefaultTolerances);

/// Chart coordinates of a point of K with invertible top block.
struct SphereChartPoint {
  ComplexMatrix a; ///< x2 x1^{-1}
  ComplexMatrix u; ///< unitary factor of x1 = r u
};

SphereChartPoint psi0(const SphereVector &x, const Tolerances &tol = kDefaultTolerances);

/// Inverse chart: ((1 + a*a)^{-1/2} u, a (1 + a*a)^{-1/2} u).
SphereVector psi0_inverse(const ComplexMatrix &a, const ComplexMatrix &u,
                          const Tolerances &tol = kDefaultTolerances);

/// Local cross section over the principal chart: the preimage of p whose
/// top block is positive definite.
SphereVector section_sigma(const SphereProjection &p,
                           const Tolerances &tol = kDefaultTolerances);

/// Unitary of size 2n whose first block column is x, with the free
/// unitary of the completion fixed to the identity.
ComplexMatrix unitary_completion(const SphereVector &x,
                                 const Tolerances &tol = kDefaultTolerances);

/// u = <x, z> with z = x u, for two points over the same projection.
ComplexMatrix fiber_transfer(const SphereVector &x, const SphereVector &z,
                             const Tolerances &tol = kDefaultTolerances);

struct TangentSplit {
  TangentAtSphere vertical;
  TangentAtSphere horizontal;
};

/// Splits xi into x <x, xi> (vertical) and the remainder, which lies in
/// ker(h(x)).
TangentSplit tangent_split(const TangentAtSphere &xi,
                           const Tolerances &tol = kDefaultTolerances);

/// Structure morphism kappa_x(X) = X x for X tangent to R at h(x).
TangentAtSphere kappa(const SphereVector &x, const ComplexMatrix &tangent,
                      const Tolerances &tol = kDefaultTolerances);

} // namespace rsphere
