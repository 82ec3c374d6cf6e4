#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace rsphere {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by every module. All of them can be
/// overridden per call; the CLI exposes a single --tol override.
struct Tolerances {
  /// relative threshold for singular values counted as nonzero
  double rank = 1e-8;
  /// absolute slack on function domains (arcsin, sqrt, ...)
  double domain = 1e-10;
  /// relative threshold for Hermitian / unitary / sphere membership checks
  double membership = 1e-8;
  /// minimum distance of a spectrum from the poles of tan
  double pole_guard = 1e-6;
  /// absolute threshold for accepting a matrix as a projection
  double projection = 1e-6;
};

inline constexpr Tolerances kDefaultTolerances{};

enum class ScalarFunction {
  Cos,
  Sin,
  Sinc,
  Tan,
  Arcsin,
  Asinc,
  Arctan,
  Arccos,
  Sqrt,
  Square,
  ExpI,
};

const char *function_name(ScalarFunction f) noexcept;

/// Eigendecomposition A = U diag(values) U* of a Hermitian matrix, with
/// eigenvalues in ascending order.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;

  /// U diag(f(values)) U*
  ComplexMatrix apply(const std::function<Complex(double)> &f) const;
};

/// Polar decomposition a = isometry * modulus.
struct PolarParts {
  ComplexMatrix isometry;
  ComplexMatrix modulus;
};

ComplexMatrix identity(Eigen::Index n);

/// Max-entry distance between A and A*, scaled by max(1, max |A_ij|).
bool is_hermitian(const ComplexMatrix &a, double tol = kDefaultTolerances.membership);
bool is_unitary(const ComplexMatrix &u, double tol = kDefaultTolerances.membership);

/// Throws NotHermitian when the check fails.
HermitianEigen hermitian_eigen(const ComplexMatrix &a,
                               const Tolerances &tol = kDefaultTolerances);

/// f(A) through the spectral theorem. Domain violations raise
/// SpectrumOutOfDomain naming the eigenvalue and the function.
ComplexMatrix herm_fun(const ComplexMatrix &a, ScalarFunction f,
                       const Tolerances &tol = kDefaultTolerances);

/// Same as above with an arbitrary scalar function; no domain checks.
ComplexMatrix herm_fun(const ComplexMatrix &a,
                       const std::function<double(double)> &f,
                       const Tolerances &tol = kDefaultTolerances);

/// sin(x)/x with the removable singularity filled in.
double sinc(double x) noexcept;
/// arcsin(x)/x for |x| <= 1.
double asinc(double x) noexcept;

/// Smallest partial isometry v with a = v|a|; singular values below the
/// rank tolerance are treated as zero.
PolarParts polar(const ComplexMatrix &a, const Tolerances &tol = kDefaultTolerances);

/// Largest singular value.
double op_norm(const ComplexMatrix &a);

/// Singular values in descending order.
RealVector singular_values(const ComplexMatrix &a);

/// a = left diag(values) right*, with square unitary factors and values in
/// descending order. One-sided Jacobi for small inputs, divide and conquer
/// otherwise.
struct SvdFactors {
  ComplexMatrix left;
  RealVector values;
  ComplexMatrix right;
};
SvdFactors svd_factors(const ComplexMatrix &a);

/// Anti-Hermitian L with exp(L) = u and spectrum of -iL inside (-pi, pi).
/// Every eigenphase must satisfy |theta| <= pi - gap.
ComplexMatrix principal_log_unitary(const ComplexMatrix &u, double gap,
                                    const Tolerances &tol = kDefaultTolerances);

/// Number of singular values above tol * max(1, op_norm(a)).
int rank_eps(const ComplexMatrix &a, double tol);

/// Orthonormal basis of ker(a), as columns. Uses the rank tolerance.
ComplexMatrix kernel_basis(const ComplexMatrix &a, double tol);

} // namespace rsphere
