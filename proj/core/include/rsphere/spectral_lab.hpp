#pragma once

#include <vector>

#include "rsphere/opgraph.hpp"
#include "rsphere/sphere.hpp"

namespace rsphere {

/// Fourier modes e^{2 pi i n x} for n = -N, ..., N, in that order. Position
/// N holds the constant mode.
class FourierTruncation {
public:
  explicit FourierTruncation(int max_frequency);

  int max_frequency() const noexcept { return n_; }
  Eigen::Index dimension() const noexcept { return 2 * n_ + 1; }
  int frequency(Eigen::Index position) const noexcept {
    return static_cast<int>(position) - n_;
  }
  std::vector<int> indices() const;

private:
  int n_;
};

/// diag(2 pi n): -i d/dx compressed to the truncated basis.
ComplexMatrix build_diff_op(const FourierTruncation &trunc);

/// Diagonal blocks of the graph projection of diag(2 pi n). On the constant
/// mode they are (1, 0, 0).
struct DiffGraphBlocks {
  RealVector d1; ///< 1 / (1 + (2 pi n)^2)
  RealVector d2; ///< 2 pi n / (1 + (2 pi n)^2)
  RealVector d3; ///< (2 pi n)^2 / (1 + (2 pi n)^2)

  /// [[D1, D2], [D2, D3]]
  ComplexMatrix assembled() const;
};

DiffGraphBlocks diff_graph_blocks(const FourierTruncation &trunc);

/// arctan(2 pi |n|)
double mode_angle(int n);

/// Hermitian Z0 with e^{i Z0} p0 e^{-i Z0} = P_Gr(diag(2 pi n)). On the pair
/// (top n, bottom n) it is i [[0, a_n], [-a_n, 0]] for n > 0 and
/// i [[0, -a_n], [a_n, 0]] for n < 0; the constant mode is fixed.
ComplexMatrix z0_generator(const FourierTruncation &trunc);

/// t -> e^{i t Z0} p0 e^{-i t Z0} as a Geodesic.
Geodesic diff_geodesic(const FourierTruncation &trunc);

/// diag(tan(t arctan(2 pi n))), 0 <= t < 1.
ComplexMatrix deformation_T(const FourierTruncation &trunc, double t);

struct NormGrowth {
  double truncated_norm; ///< tan(t arctan(2 pi N))
  double analytic_limit; ///< tan(t pi / 2)
};

NormGrowth norm_growth(const FourierTruncation &trunc, double t);

/// Orthonormal bases of ker F* and ker F; they index the rotating part of
/// every geodesic from p0 to P_invGr(F).
struct KernelPair {
  ComplexMatrix cokernel; ///< ker F*, columns in C^n
  ComplexMatrix kernel;   ///< ker F
};

KernelPair kernel_pair(const ComplexMatrix &f, double tol = kDefaultTolerances.rank);

/// Geodesic from p0 to P_invGr(F) that maps (ker F*) + 0 onto 0 + (ker F)
/// through the unitary u, expressed in the bases of kernel_pair. Its middle
/// point restricted to that part is (1/2) [[1, u], [u*, 1]].
Geodesic multi_geodesics(const ComplexMatrix &f, const ComplexMatrix &u,
                         const Tolerances &tol = kDefaultTolerances);

/// Derivative in s of multi_geodesics(F, e^{s udot}) at s = 0, evaluated at
/// time t: [[0, c udot], [c udot*, 0]] on the rotating part with
/// c = cos(t pi/2) sin(t pi/2).
ComplexMatrix jacobi_field(const ComplexMatrix &f, const ComplexMatrix &udot, double t,
                           const Tolerances &tol = kDefaultTolerances);

struct ConjugateIndex {
  int kernel_dim = 0;
  int index = 0;
  /// smallest Gram eigenvalue of the fields at t = 1/2 (0 when k = 0)
  double gram_min = 0.0;
};

/// Real dimension of the span of the Jacobi fields, counted by the rank of
/// their Gram matrix at t = 1/2. Throws IndexNonZero when dim ker F and
/// dim ker F* differ; the other two functions throw KernelMismatch.
ConjugateIndex conjugate_index(const ComplexMatrix &f,
                               const Tolerances &tol = kDefaultTolerances);

} // namespace rsphere
