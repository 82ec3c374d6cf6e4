#include "rsphere/sampling.hpp"

#include <Eigen/QR>

namespace rsphere {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

ComplexMatrix Sampler::gaussian(Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(engine_);
      const double im = normal(engine_);
      m(i, j) = Complex(re, im);
    }
  return m;
}

ComplexMatrix Sampler::unitary(Eigen::Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n));
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0)
      q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix Sampler::block_with_norm(Eigen::Index n, double norm) {
  ComplexMatrix m = gaussian(n, n);
  return m * (norm / op_norm(m));
}

ComplexMatrix Sampler::hermitian_with_spectrum(const RealVector &spectrum) {
  ComplexMatrix u = unitary(spectrum.size());
  ComplexMatrix h = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
  return (h + h.adjoint()) / 2.0;
}

SphereProjection Sampler::projection(Eigen::Index n) {
  ComplexMatrix u = unitary(2 * n);
  ComplexMatrix col = u.leftCols(n);
  return SphereProjection::from_matrix(col * col.adjoint());
}

} // namespace rsphere
