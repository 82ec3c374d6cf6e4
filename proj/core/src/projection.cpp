#include "rsphere/projection.hpp"

#include <cmath>
#include <sstream>

#include "rsphere/error.hpp"

namespace rsphere {

ComplexMatrix block_matrix(const ComplexMatrix &a11, const ComplexMatrix &a12,
                           const ComplexMatrix &a21, const ComplexMatrix &a22) {
  const Eigen::Index n = a11.rows();
  if (a11.cols() != n || a12.rows() != n || a12.cols() != n || a21.rows() != n ||
      a21.cols() != n || a22.rows() != n || a22.cols() != n)
    throw Error(Errc::DimensionMismatch, "blocks must be square and equally sized");
  ComplexMatrix out(2 * n, 2 * n);
  out << a11, a12, a21, a22;
  return out;
}

ComplexMatrix origin_symmetry(Eigen::Index n) {
  ComplexMatrix rho = ComplexMatrix::Zero(2 * n, 2 * n);
  rho.topLeftCorner(n, n).setIdentity();
  rho.bottomRightCorner(n, n) = -identity(n);
  return rho;
}

ComplexMatrix block_swap(Eigen::Index n) {
  ComplexMatrix s = ComplexMatrix::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n).setIdentity();
  s.bottomLeftCorner(n, n).setIdentity();
  return s;
}

SphereProjection SphereProjection::from_matrix(const ComplexMatrix &m,
                                               const Tolerances &tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
    throw Error(Errc::NotProjection, "expected a nonempty 2n x 2n matrix");
  if (!m.allFinite())
    throw Error(Errc::NotProjection, "non-finite entries");
  const double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  ComplexMatrix h = (m + m.adjoint()) / 2.0;
  const double idem_defect = (h * h - h).cwiseAbs().maxCoeff();
  if (herm_defect > tol.projection || idem_defect > tol.projection) {
    std::ostringstream msg;
    msg << "Hermitian defect " << herm_defect << ", idempotency defect "
        << idem_defect;
    throw Error(Errc::NotProjection, msg.str());
  }
  const double n = static_cast<double>(m.rows() / 2);
  const double trace = h.trace().real();
  if (std::abs(trace - n) > 0.5)
    throw Error(Errc::NotProjection,
                "trace " + std::to_string(trace) + " differs from block size");
  return SphereProjection(std::move(h));
}

SphereProjection SphereProjection::origin(Eigen::Index n) {
  ComplexMatrix p = ComplexMatrix::Zero(2 * n, 2 * n);
  p.topLeftCorner(n, n).setIdentity();
  return SphereProjection(std::move(p));
}

ComplexMatrix SphereProjection::symmetry() const {
  return 2.0 * m_ - identity(m_.rows());
}

ComplexMatrix TangentVector::hermitian() const {
  const Eigen::Index k = n();
  return block_matrix(ComplexMatrix::Zero(k, k), a.adjoint(), a,
                      ComplexMatrix::Zero(k, k));
}

ComplexMatrix TangentVector::generator() const {
  const Eigen::Index k = n();
  return block_matrix(ComplexMatrix::Zero(k, k), -a.adjoint(), a,
                      ComplexMatrix::Zero(k, k));
}

TangentVector tangent_from_generator(const ComplexMatrix &generator) {
  const Eigen::Index n = generator.rows() / 2;
  return {generator.bottomLeftCorner(n, n)};
}

} // namespace rsphere
