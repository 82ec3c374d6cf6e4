#include "rsphere/hopf.hpp"

#include <algorithm>
#include <cmath>


#include "rsphere/error.hpp"

namespace rsphere {

namespace {

double max_abs(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square_pair(const ComplexMatrix &x1, const ComplexMatrix &x2) {
  if (x1.rows() != x1.cols() || x2.rows() != x2.cols() || x1.rows() != x2.rows())
    throw Error(Errc::DimensionMismatch, "blocks must be square of equal size");
}

void require_in_sphere(const SphereVector &x, const Tolerances &tol) {
  require_square_pair(x.x1, x.x2);
  if (!in_sphere(x.x1, x.x2, tol.membership))
    throw Error(Errc::NotInSphere, "x1* x1 + x2* x2 differs from I");
}

// x1^{-1} after checking the smallest singular value.
ComplexMatrix invert_top(const ComplexMatrix &x1, const Tolerances &tol) {
  const SvdFactors svd = svd_factors(x1);
  const RealVector &s = svd.values;
  if (s.size() == 0 || s(s.size() - 1) <= tol.rank * std::max(1.0, s(0)))
    throw Error(Errc::TopBlockSingular, "top block is not invertible");
  return svd.right * s.cwiseInverse().cast<Complex>().asDiagonal() * svd.left.adjoint();
}

} // namespace

ComplexMatrix SphereVector::stacked() const {
  ComplexMatrix out(x1.rows() + x2.rows(), x1.cols());
  out << x1, x2;
  return out;
}

SphereVector SphereVector::from_stacked(const ComplexMatrix &column) {
  const Eigen::Index n = column.cols();
  if (column.rows() != 2 * n)
    throw Error(Errc::DimensionMismatch, "expected a 2n x n column");
  return {column.topRows(n), column.bottomRows(n)};
}

SphereVector SphereVector::times(const ComplexMatrix &u) const {
  return {x1 * u, x2 * u};
}

SphereVector SphereVector::base_point(Eigen::Index n) {
  return {identity(n), ComplexMatrix::Zero(n, n)};
}

ComplexMatrix TangentAtSphere::stacked() const {
  ComplexMatrix out(xi1.rows() + xi2.rows(), xi1.cols());
  out << xi1, xi2;
  return out;
}

ComplexMatrix module_inner(const ComplexMatrix &x, const ComplexMatrix &y) {
  return x.adjoint() * y;
}

double module_norm(const ComplexMatrix &x) {
  return std::sqrt(op_norm(module_inner(x, x)));
}

bool in_sphere(const ComplexMatrix &x1, const ComplexMatrix &x2, double tol) {
  require_square_pair(x1, x2);
  ComplexMatrix gram = x1.adjoint() * x1 + x2.adjoint() * x2;
  return op_norm(gram - identity(x1.rows())) <= tol;
}

SphereProjection hopf(const SphereVector &x, const Tolerances &tol) {
  require_in_sphere(x, tol);
  ComplexMatrix col = x.stacked();
  return SphereProjection::from_matrix(col * col.adjoint(), tol);
}

SphereChartPoint psi0(const SphereVector &x, const Tolerances &tol) {
  require_in_sphere(x, tol);
  ComplexMatrix inv = invert_top(x.x1, tol);
  // x1 = L S R* = (L S L*)(L R*): the unitary factor of the left polar form
  const SvdFactors svd = svd_factors(x.x1);
  return {x.x2 * inv, svd.left * svd.right.adjoint()};
}

SphereVector psi0_inverse(const ComplexMatrix &a, const ComplexMatrix &u,
                          const Tolerances &tol) {
  if (a.rows() != a.cols() || u.rows() != a.rows() || u.cols() != a.cols())
    throw Error(Errc::DimensionMismatch, "a and u must be square of equal size");
  if (!is_unitary(u, tol.membership))
    throw Error(Errc::NotUnitary, "u is not unitary");
  const Eigen::Index n = a.rows();
  ComplexMatrix c = herm_fun(
      identity(n) + a.adjoint() * a, [](double x) { return 1.0 / std::sqrt(x); }, tol);
  return {c * u, a * c * u};
}

SphereVector section_sigma(const SphereProjection &p, const Tolerances &tol) {
  // sigma(p) = Psi0(phi0(p), 1). Written through p11 = x1 x1* directly:
  // x1 = p11^{1/2}, x2 = p21 p11^{-1/2}.
  HermitianEigen eig = hermitian_eigen(p.p11(), tol);
  if (eig.values(0) <= tol.rank)
    throw Error(Errc::NotInChart, "top-left block of the projection is singular");
  ComplexMatrix root = eig.apply([](double x) { return Complex(std::sqrt(x)); });
  ComplexMatrix inv_root =
      eig.apply([](double x) { return Complex(1.0 / std::sqrt(x)); });
  root = (root + root.adjoint()) / 2.0;
  return {root, p.p21() * inv_root};
}

ComplexMatrix unitary_completion(const SphereVector &x, const Tolerances &tol) {
  require_in_sphere(x, tol);
  const Eigen::Index n = x.n();
  ComplexMatrix a = x.x2 * invert_top(x.x1, tol);
  ComplexMatrix d = herm_fun(
      identity(n) + a * a.adjoint(), [](double v) { return 1.0 / std::sqrt(v); },
      tol);
  return block_matrix(x.x1, -a.adjoint() * d, x.x2, d);
}

ComplexMatrix fiber_transfer(const SphereVector &x, const SphereVector &z,
                             const Tolerances &tol) {
  require_in_sphere(x, tol);
  require_in_sphere(z, tol);
  if (x.n() != z.n())
    throw Error(Errc::DimensionMismatch, "points of different spheres");
  ComplexMatrix xs = x.stacked(), zs = z.stacked();
  if (op_norm(xs * xs.adjoint() - zs * zs.adjoint()) > tol.membership)
    throw Error(Errc::NotSameFiber, "h(x) and h(z) differ");
  return module_inner(xs, zs);
}

TangentSplit tangent_split(const TangentAtSphere &xi, const Tolerances &tol) {
  const SphereVector &x = xi.base;
  require_in_sphere(x, tol);
  ComplexMatrix xs = x.stacked(), v = xi.stacked();
  if (v.rows() != xs.rows() || v.cols() != xs.cols())
    throw Error(Errc::DimensionMismatch, "tangent and base differ in shape");
  ComplexMatrix w = module_inner(xs, v);
  if (max_abs(w + w.adjoint()) > tol.membership * std::max(1.0, max_abs(w)))
    throw Error(Errc::NotTangent, "<x, xi> is not anti-Hermitian");
  const Eigen::Index n = x.n();
  ComplexMatrix vert = xs * w;
  ComplexMatrix horiz = v - vert;
  return {{x, vert.topRows(n), vert.bottomRows(n)},
          {x, horiz.topRows(n), horiz.bottomRows(n)}};
}

TangentAtSphere kappa(const SphereVector &x, const ComplexMatrix &tangent,
                      const Tolerances &tol) {
  require_in_sphere(x, tol);
  ComplexMatrix xs = x.stacked();
  if (tangent.rows() != xs.rows() || tangent.cols() != xs.rows())
    throw Error(Errc::DimensionMismatch, "tangent must be 2n x 2n");
  ComplexMatrix p = xs * xs.adjoint();
  const double scale = std::max(1.0, max_abs(tangent));
  if (!is_hermitian(tangent, tol.membership) ||
      max_abs(tangent * p - (identity(p.rows()) - p) * tangent) >
          tol.membership * scale)
    throw Error(Errc::NotCodiagonal, "X is not a Hermitian h(x)-codiagonal matrix");
  ComplexMatrix out = tangent * xs;
  const Eigen::Index n = x.n();
  return {x, out.topRows(n), out.bottomRows(n)};
}

} // namespace rsphere
