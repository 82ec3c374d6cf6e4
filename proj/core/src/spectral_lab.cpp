#include "rsphere/spectral_lab.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rsphere/error.hpp"

namespace rsphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_unit_interval(double t) {
  if (!(t >= 0.0 && t < 1.0))
    throw Error(Errc::ParameterOutOfRange, "t must lie in [0, 1)");
}

ComplexMatrix real_diagonal(const RealVector &d) {
  return d.cast<Complex>().asDiagonal();
}

// [Kc + 0 | 0 + K]: columns spanning the rotating part in C^{2n}.
ComplexMatrix rotating_basis(const KernelPair &pair) {
  const Eigen::Index n = pair.kernel.rows();
  const Eigen::Index k = pair.kernel.cols();
  ComplexMatrix basis = ComplexMatrix::Zero(2 * n, 2 * k);
  basis.topLeftCorner(n, k) = pair.cokernel;
  basis.bottomRightCorner(n, k) = pair.kernel;
  return basis;
}

} // namespace

FourierTruncation::FourierTruncation(int max_frequency) : n_(max_frequency) {
  if (max_frequency < 1)
    throw Error(Errc::ParameterOutOfRange, "N must be at least 1");
}

std::vector<int> FourierTruncation::indices() const {
  std::vector<int> out;
  for (int k = -n_; k <= n_; ++k)
    out.push_back(k);
  return out;
}

ComplexMatrix build_diff_op(const FourierTruncation &trunc) {
  RealVector d(trunc.dimension());
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d(i) = kTwoPi * trunc.frequency(i);
  return real_diagonal(d);
}

ComplexMatrix DiffGraphBlocks::assembled() const {
  return block_matrix(real_diagonal(d1), real_diagonal(d2), real_diagonal(d2),
                      real_diagonal(d3));
}

DiffGraphBlocks diff_graph_blocks(const FourierTruncation &trunc) {
  const Eigen::Index dim = trunc.dimension();
  DiffGraphBlocks blocks{RealVector(dim), RealVector(dim), RealVector(dim)};
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double lambda = kTwoPi * trunc.frequency(i);
    const double den = 1.0 + lambda * lambda;
    blocks.d1(i) = 1.0 / den;
    blocks.d2(i) = lambda / den;
    blocks.d3(i) = lambda * lambda / den;
  }
  return blocks;
}

double mode_angle(int n) { return std::atan(kTwoPi * std::abs(n)); }

ComplexMatrix z0_generator(const FourierTruncation &trunc) {
  const Eigen::Index dim = trunc.dimension();
  const Complex i(0.0, 1.0);
  ComplexMatrix z = ComplexMatrix::Zero(2 * dim, 2 * dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const int n = trunc.frequency(k);
    if (n == 0)
      continue;
    const double a = n > 0 ? mode_angle(n) : -mode_angle(n);
    z(k, dim + k) = i * a;
    z(dim + k, k) = -i * a;
  }
  return z;
}

Geodesic diff_geodesic(const FourierTruncation &trunc) {
  RealVector angles(trunc.dimension());
  for (Eigen::Index k = 0; k < angles.size(); ++k)
    angles(k) = std::atan(kTwoPi * trunc.frequency(k));
  return Geodesic::from_origin({real_diagonal(angles)});
}

ComplexMatrix deformation_T(const FourierTruncation &trunc, double t) {
  require_unit_interval(t);
  RealVector d(trunc.dimension());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    d(k) = std::tan(t * std::atan(kTwoPi * trunc.frequency(k)));
  return real_diagonal(d);
}

NormGrowth norm_growth(const FourierTruncation &trunc, double t) {
  require_unit_interval(t);
  return {std::tan(t * mode_angle(trunc.max_frequency())),
          std::tan(t * std::numbers::pi / 2.0)};
}

KernelPair kernel_pair(const ComplexMatrix &f, double tol) {
  return {kernel_basis(f.adjoint(), tol), kernel_basis(f, tol)};
}

namespace {

KernelPair matched_kernels(const ComplexMatrix &f, double tol, Errc code) {
  KernelPair pair = kernel_pair(f, tol);
  if (pair.kernel.cols() != pair.cokernel.cols())
    throw Error(code, "dim ker F = " + std::to_string(pair.kernel.cols()) +
                          ", dim ker F* = " + std::to_string(pair.cokernel.cols()));
  return pair;
}

} // namespace

Geodesic multi_geodesics(const ComplexMatrix &f, const ComplexMatrix &u,
                         const Tolerances &tol) {
  if (f.rows() != f.cols())
    throw Error(Errc::KernelMismatch, "F must be square");
  KernelPair pair = matched_kernels(f, tol.rank, Errc::KernelMismatch);
  const Eigen::Index n = f.rows();
  const Eigen::Index k = pair.kernel.cols();
  if (u.rows() != k || u.cols() != k)
    throw Error(Errc::DimensionMismatch,
                "u must be " + std::to_string(k) + " x " + std::to_string(k));
  ComplexMatrix basis = rotating_basis(pair);
  ComplexMatrix from = basis.leftCols(k), to = basis.rightCols(k);
  // The block at t = 1/2 is (1/2)[[1, W*], [W, 1]] for pairing W, so W = u*.
  return connecting_geodesic(SphereProjection::origin(n), proj_inv_graph(f, tol), from,
                             to, u.adjoint(), tol);
}

ComplexMatrix jacobi_field(const ComplexMatrix &f, const ComplexMatrix &udot, double t,
                           const Tolerances &tol) {
  KernelPair pair = matched_kernels(f, tol.rank, Errc::KernelMismatch);
  const Eigen::Index k = pair.kernel.cols();
  if (udot.rows() != k || udot.cols() != k)
    throw Error(Errc::DimensionMismatch,
                "udot must be " + std::to_string(k) + " x " + std::to_string(k));
  if (k > 0 && (udot + udot.adjoint()).cwiseAbs().maxCoeff() >
                   tol.membership * std::max(1.0, udot.cwiseAbs().maxCoeff()))
    throw Error(Errc::InvalidArgument, "udot must be anti-Hermitian");
  const double half_angle = t * std::numbers::pi / 2.0;
  const double c = std::cos(half_angle) * std::sin(half_angle);
  ComplexMatrix local = ComplexMatrix::Zero(2 * k, 2 * k);
  local.topRightCorner(k, k) = c * udot;
  local.bottomLeftCorner(k, k) = c * udot.adjoint();
  ComplexMatrix basis = rotating_basis(pair);
  return basis * local * basis.adjoint();
}

ConjugateIndex conjugate_index(const ComplexMatrix &f, const Tolerances &tol) {
  KernelPair pair = matched_kernels(f, tol.rank, Errc::IndexNonZero);
  const Eigen::Index k = pair.kernel.cols();
  ConjugateIndex out;
  out.kernel_dim = static_cast<int>(k);
  if (k == 0)
    return out;

  // Canonical real basis of the anti-Hermitian k x k matrices.
  const Complex i(0.0, 1.0);
  std::vector<ComplexMatrix> directions;
  for (Eigen::Index r = 0; r < k; ++r) {
    ComplexMatrix e = ComplexMatrix::Zero(k, k);
    e(r, r) = i;
    directions.push_back(e);
    for (Eigen::Index s = r + 1; s < k; ++s) {
      ComplexMatrix real_part = ComplexMatrix::Zero(k, k);
      real_part(r, s) = 1.0;
      real_part(s, r) = -1.0;
      directions.push_back(real_part);
      ComplexMatrix imag_part = ComplexMatrix::Zero(k, k);
      imag_part(r, s) = i;
      imag_part(s, r) = i;
      directions.push_back(imag_part);
    }
  }

  std::vector<ComplexMatrix> fields;
  for (const ComplexMatrix &d : directions)
    fields.push_back(jacobi_field(f, d, 0.5, tol));
  const auto m = static_cast<Eigen::Index>(fields.size());
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index s = 0; s < m; ++s)
      gram(r, s) = (fields[r].adjoint() * fields[s]).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd &ev = solver.eigenvalues();
  out.gram_min = ev(0);
  out.index = static_cast<int>((ev.array() > 1e-12).count());
  return out;
}

} // namespace rsphere
