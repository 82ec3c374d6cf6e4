#include "rsphere/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rsphere/error.hpp"

namespace rsphere {

namespace {

double max_abs(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) { return (m + m.adjoint()) / 2.0; }

// Multiplies each column by a phase so that its largest-magnitude entry
// becomes real and positive.
void fix_phases(ComplexMatrix &columns) {
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Eigen::Index k = 0;
    columns.col(j).cwiseAbs().maxCoeff(&k);
    const Complex z = columns(k, j);
    if (std::abs(z) > 0)
      columns.col(j) *= std::conj(z) / std::abs(z);
  }
}

// Eigenvectors of a Hermitian projection: range (eigenvalue 1) first.
ComplexMatrix eigen_frame(const ComplexMatrix &p, Eigen::Index rank) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(p));
  const Eigen::Index dim = p.rows();
  ComplexMatrix frame(dim, dim);
  frame.leftCols(rank) = solver.eigenvectors().rightCols(rank);
  frame.rightCols(dim - rank) = solver.eigenvectors().leftCols(dim - rank);
  fix_phases(frame);
  return frame;
}

ComplexMatrix inverse_checked(const ComplexMatrix &m, double rel_tol, Errc code,
                              const char *what) {
  const SvdFactors svd = svd_factors(m);
  const RealVector &s = svd.values;
  if (s.size() == 0 || s(s.size() - 1) <= rel_tol * std::max(1.0, s(0)))
    throw Error(code, what);
  return svd.right * s.cwiseInverse().cast<Complex>().asDiagonal() * svd.left.adjoint();
}

void require_codiagonal(const ComplexMatrix &y, const ComplexMatrix &p, double tol,
                        Errc code, const char *what) {
  if (y.rows() != p.rows() || y.cols() != p.cols())
    throw Error(Errc::DimensionMismatch, "tangent and base differ in size");
  const double scale = std::max(1.0, max_abs(y));
  const ComplexMatrix one = identity(p.rows());
  if (!is_hermitian(y, tol) || max_abs(y * p - (one - p) * y) > tol * scale)
    throw Error(code, what);
}

void require_log_domain(const SphereProjection &p, const Tolerances &tol) {
  HermitianEigen eig = hermitian_eigen(p.p11(), tol);
  if (!(eig.values(0) > 0.5))
    throw Error(Errc::OutsideLogDomain,
                "smallest eigenvalue of p11 is " + std::to_string(eig.values(0)) +
                    ", not above 1/2; use log_general");
}

} // namespace

ChartStatus chart_status(const SphereProjection &p, double tol) {
  const Eigen::Index n = p.n();
  ChartStatus status;

  ComplexMatrix basis = eigen_frame(p.matrix(), n).leftCols(n);
  RealVector top_sv = singular_values(basis.topRows(n));
  status.regular_basis = top_sv(n - 1) > std::sqrt(tol);

  try {
    Tolerances local;
    local.rank = tol;
    ComplexMatrix a = phi0(p, local);
    status.graph_of_chart =
        a.allFinite() && op_norm(phi0_inv(a, local).matrix() - p.matrix()) <= 1e-6;
  } catch (const Error &) {
    status.graph_of_chart = false;
  }

  status.near_origin =
      op_norm(p.matrix() - SphereProjection::origin(n).matrix()) < std::sqrt(1.0 - tol);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> top(hermitian_part(p.p11()),
                                                   Eigen::EigenvaluesOnly);
  status.top_invertible = top.eigenvalues()(0) > tol;
  return status;
}

ComplexMatrix phi0(const SphereProjection &p, const Tolerances &tol) {
  SphereVector x = section_sigma(p, tol);
  // x1 is Hermitian positive definite, so x2 x1^{-1} = (x1^{-1} x2*)*
  return x.x1.llt().solve(x.x2.adjoint()).adjoint();
}

SphereProjection phi0_inv(const ComplexMatrix &a, const Tolerances &tol) {
  if (a.rows() != a.cols())
    throw Error(Errc::DimensionMismatch, "a must be square");
  const Eigen::Index n = a.rows();
  // a = L S R*: (1 + a*a)^{-1} = R (1 + S^2)^{-1} R* and so on, which keeps
  // full relative accuracy for large singular values.
  const SvdFactors svd = svd_factors(a);
  const RealVector &s = svd.values;
  const ComplexMatrix &left = svd.left, &right = svd.right;
  Eigen::VectorXcd d1(n), d2(n), d3(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double den = 1.0 + s(i) * s(i);
    d1(i) = 1.0 / den;
    d2(i) = s(i) / den;
    d3(i) = s(i) * s(i) / den;
  }
  ComplexMatrix p11 = right * d1.asDiagonal() * right.adjoint();
  ComplexMatrix p21 = left * d2.asDiagonal() * right.adjoint();
  ComplexMatrix p22 = left * d3.asDiagonal() * left.adjoint();
  return SphereProjection::from_matrix(
      block_matrix(hermitian_part(p11), p21.adjoint(), p21, hermitian_part(p22)), tol);
}

ComplexMatrix chart_transition(const ComplexMatrix &u, const ComplexMatrix &v,
                               const ComplexMatrix &a, const Tolerances &tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || u.rows() != 2 * n || u.cols() != 2 * n || v.rows() != 2 * n ||
      v.cols() != 2 * n)
    throw Error(Errc::DimensionMismatch, "expected 2n x 2n unitaries and an n x n chart");
  if (!is_unitary(u, tol.membership) || !is_unitary(v, tol.membership))
    throw Error(Errc::NotUnitary, "chart frames must be unitary");
  ComplexMatrix m = (u * v).adjoint();
  ComplexMatrix den = m.topLeftCorner(n, n) + m.topRightCorner(n, n) * a;
  ComplexMatrix num = m.bottomLeftCorner(n, n) + m.bottomRightCorner(n, n) * a;
  return num * inverse_checked(den, tol.rank, Errc::MobiusPole, "c + d a is singular");
}

ComplexMatrix geodesic_matrix(const TangentVector &x, double t) {
  const Eigen::Index n = x.n();
  const ComplexMatrix &a = x.a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a.adjoint() * a));
  const ComplexMatrix &u = solver.eigenvectors();
  Eigen::VectorXcd cos_d(n), sinc_d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
    cos_d(i) = std::cos(t * s);
    sinc_d(i) = t * sinc(t * s);
  }
  ComplexMatrix column(2 * n, n);
  column.topRows(n) = u * cos_d.asDiagonal() * u.adjoint();
  column.bottomRows(n) = a * (u * sinc_d.asDiagonal() * u.adjoint());
  return hermitian_part(column * column.adjoint());
}

SphereProjection geodesic_eval(const TangentVector &x, double t, const Tolerances &tol) {
  if (x.a.rows() != x.a.cols())
    throw Error(Errc::DimensionMismatch, "tangent block must be square");
  return SphereProjection::from_matrix(geodesic_matrix(x, t), tol);
}

SphereProjection exp_p0(const TangentVector &x, const Tolerances &tol) {
  return geodesic_eval(x, 1.0, tol);
}

TangentVector log_p0(const SphereProjection &p, const Tolerances &tol) {
  require_log_domain(p, tol);
  // Lower-left block of rho0 Asinc(2|C|) C with C = [p0, p]; only
  // |p12| = (p21 p21*)^{1/2} enters that block.
  ComplexMatrix p21 = p.p21();
  HermitianEigen eig = hermitian_eigen(hermitian_part(p21 * p21.adjoint()), tol);
  ComplexMatrix weight = eig.apply([](double lambda) {
    return Complex(asinc(std::min(1.0, 2.0 * std::sqrt(std::max(lambda, 0.0)))));
  });
  return {weight * p21};
}

ComplexMatrix log_general(const SphereProjection &p, const SphereProjection &q,
                          double gap, const Tolerances &tol) {
  if (p.n() != q.n())
    throw Error(Errc::DimensionMismatch, "projections of different size");
  const double distance = op_norm(p.matrix() - q.matrix());
  if (distance >= 1.0 - gap)
    throw Error(Errc::ProjectionsTooFar,
                "||p - q|| = " + std::to_string(distance) + " is not below 1");
  ComplexMatrix product = q.symmetry() * p.symmetry();
  return principal_log_unitary(product, 1e-12, tol) / 2.0;
}

double finsler_dist(const SphereProjection &p, const SphereProjection &q,
                    const Tolerances &tol) {
  return op_norm(log_general(p, q, 1e-10, tol));
}

AngleParts angle(const SphereProjection &p, const Tolerances &tol) {
  require_log_domain(p, tol);
  SphereVector x = section_sigma(p, tol);
  return {herm_fun(x.x1, ScalarFunction::Arccos, tol), polar(x.x2, tol).isometry};
}

PolarParts complementary_cross_ratio(const SphereProjection &p, const Tolerances &tol) {
  const Eigen::Index n = p.n();
  ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  ComplexMatrix commutator = block_matrix(zero, p.p12(), -p.p21(), zero);
  return polar(commutator, tol);
}

namespace {

std::vector<ComplexMatrix> path_derivative(const std::vector<SphereProjection> &samples,
                                           double h) {
  const std::size_t m = samples.size();
  auto f = [&](std::size_t i) -> const ComplexMatrix & { return samples[i].matrix(); };
  std::vector<ComplexMatrix> d(m);
  const double w = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < m; ++i)
    d[i] = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) * w;
  d[0] = (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) * w;
  d[1] = (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) * w;
  const std::size_t e = m - 1;
  d[e] = (25.0 * f(e) - 48.0 * f(e - 1) + 36.0 * f(e - 2) - 16.0 * f(e - 3) +
          3.0 * f(e - 4)) * w;
  d[e - 1] = (3.0 * f(e) + 10.0 * f(e - 1) - 18.0 * f(e - 2) + 6.0 * f(e - 3) -
              f(e - 4)) * w;
  return d;
}

ComplexMatrix integrate_transport(const std::vector<ComplexMatrix> &field, double h,
                                  int steps) {
  const std::size_t stride = (field.size() - 1) / static_cast<std::size_t>(steps);
  const double big = h * static_cast<double>(stride);
  ComplexMatrix g = identity(field.front().rows());
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(s) * stride;
    const ComplexMatrix &a0 = field[i];
    const ComplexMatrix &am = field[i + stride / 2];
    const ComplexMatrix &a1 = field[i + stride];
    ComplexMatrix k1 = a0 * g;
    ComplexMatrix k2 = am * (g + 0.5 * big * k1);
    ComplexMatrix k3 = am * (g + 0.5 * big * k2);
    ComplexMatrix k4 = a1 * (g + big * k3);
    g += (big / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return g;
}

} // namespace

TransportResult parallel_transport(const std::vector<SphereProjection> &samples,
                                   double duration, int steps) {
  if (samples.size() < 5)
    throw Error(Errc::PathTooCoarse, "at least five samples are needed");
  if (steps < 1 || !(duration > 0))
    throw Error(Errc::InvalidArgument, "steps and duration must be positive");
  const std::size_t intervals = samples.size() - 1;
  if (intervals % (2 * static_cast<std::size_t>(steps)) != 0)
    throw Error(Errc::InvalidArgument,
                "sample intervals must be a multiple of twice the step count");
  const Eigen::Index dim = samples.front().matrix().rows();
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i + 1].matrix().rows() != dim)
      throw Error(Errc::DimensionMismatch, "samples of different size");
    if (op_norm(samples[i + 1].matrix() - samples[i].matrix()) >= 0.5)
      throw Error(Errc::PathTooCoarse,
                  "samples " + std::to_string(i) + " and " + std::to_string(i + 1) +
                      " are 0.5 or more apart");
  }
  const double h = duration / static_cast<double>(intervals);
  std::vector<ComplexMatrix> rate = path_derivative(samples, h);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ComplexMatrix &p = samples[i].matrix();
    rate[i] = rate[i] * p - p * rate[i];
  }
  TransportResult result;
  result.unitary = integrate_transport(rate, h, steps);
  result.error_estimate = std::numeric_limits<double>::quiet_NaN();
  if (steps % 2 == 0)
    result.error_estimate =
        op_norm(result.unitary - integrate_transport(rate, h, steps / 2)) / 15.0;
  return result;
}

ComplexMatrix tangent_chart(const SphereProjection &p, const ComplexMatrix &y,
                            const Tolerances &tol) {
  require_codiagonal(y, p.matrix(), tol.membership, Errc::NotTangent,
                     "Y is not a Hermitian p-codiagonal matrix");
  SphereVector x = section_sigma(p, tol);
  const Eigen::Index n = p.n();
  ComplexMatrix moved = y * x.stacked();
  ComplexMatrix inv = x.x1.llt().solve(identity(n));
  ComplexMatrix y1 = moved.topRows(n), y2 = moved.bottomRows(n);
  return y2 * inv - x.x2 * inv * y1 * inv;
}

ComplexMatrix tangent_chart_inv(const ComplexMatrix &a, const ComplexMatrix &adot,
                                const Tolerances &) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || adot.rows() != n || adot.cols() != n)
    throw Error(Errc::DimensionMismatch, "a and adot must be square of equal size");
  ComplexMatrix c2 = (identity(n) + a.adjoint() * a).llt().solve(identity(n));
  ComplexMatrix b = c2 * (adot.adjoint() * a + a.adjoint() * adot) * c2;
  ComplexMatrix col(2 * n, n), dcol(2 * n, n);
  col << identity(n), a;
  dcol << ComplexMatrix::Zero(n, n), adot;
  ComplexMatrix y = dcol * c2 * col.adjoint() + col * c2 * dcol.adjoint() -
                    col * b * col.adjoint();
  return hermitian_part(y);
}

double finsler_pullback_norm(const ComplexMatrix &a, const ComplexMatrix &adot,
                             const Tolerances &tol) {
  return op_norm(tangent_chart_inv(a, adot, tol));
}

namespace {

ComplexMatrix rsp_basis(const ComplexMatrix &p, const ComplexMatrix &u,
                        const Tolerances &tol) {
  if (p.rows() != p.cols() || u.rows() != p.rows() || u.cols() != p.cols())
    throw Error(Errc::DimensionMismatch, "p and u must be square of equal size");
  const double scale = std::max(1.0, max_abs(p));
  if (max_abs(p - p.adjoint()) > tol.projection * scale ||
      max_abs(p * p - p) > tol.projection * scale)
    throw Error(Errc::NotProjection, "p is not a Hermitian idempotent");
  if (!is_unitary(u, tol.membership))
    throw Error(Errc::NotUnitary, "u is not unitary");
  const ComplexMatrix one = identity(p.rows());
  if (max_abs(u * p * u.adjoint() - (one - p)) > tol.membership)
    throw Error(Errc::NotRsp, "u p u* differs from 1 - p");
  const auto rank = static_cast<Eigen::Index>(std::lround(p.trace().real()));
  return eigen_frame(p, rank).leftCols(rank);
}

} // namespace

ComplexMatrix rsp_isomorphism(const ComplexMatrix &m, const ComplexMatrix &p,
                              const ComplexMatrix &u, const Tolerances &tol) {
  ComplexMatrix w = rsp_basis(p, u, tol);
  if (m.rows() != p.rows() || m.cols() != p.cols())
    throw Error(Errc::DimensionMismatch, "m and p differ in size");
  ComplexMatrix uw = u * w;
  const Eigen::Index r = w.cols();
  ComplexMatrix out(2 * r, 2 * r);
  out << w.adjoint() * m * w, w.adjoint() * m * uw, uw.adjoint() * m * w,
      uw.adjoint() * m * uw;
  return out;
}

ComplexMatrix rsp_inverse(const ComplexMatrix &blocks, const ComplexMatrix &p,
                          const ComplexMatrix &u, const Tolerances &tol) {
  ComplexMatrix w = rsp_basis(p, u, tol);
  const Eigen::Index r = w.cols();
  if (blocks.rows() != 2 * r || blocks.cols() != 2 * r)
    throw Error(Errc::DimensionMismatch, "block matrix must have size 2 rank(p)");
  ComplexMatrix uw = u * w;
  return w * blocks.topLeftCorner(r, r) * w.adjoint() +
         w * blocks.topRightCorner(r, r) * uw.adjoint() +
         uw * blocks.bottomLeftCorner(r, r) * w.adjoint() +
         uw * blocks.bottomRightCorner(r, r) * uw.adjoint();
}

ComplexMatrix projection_frame(const SphereProjection &p) {
  return eigen_frame(p.matrix(), p.n());
}

Geodesic Geodesic::from_origin(TangentVector x) {
  const Eigen::Index n = x.n();
  return Geodesic(SphereProjection::origin(n), identity(2 * n), std::move(x), true);
}

Geodesic Geodesic::from_generator(const SphereProjection &base,
                                  const ComplexMatrix &generator,
                                  const Tolerances &tol) {
  const Eigen::Index n = base.n();
  if (generator.rows() != 2 * n || generator.cols() != 2 * n)
    throw Error(Errc::DimensionMismatch, "generator must match the base");
  const double scale = std::max(1.0, max_abs(generator));
  if (max_abs(generator + generator.adjoint()) > tol.membership * scale)
    throw Error(Errc::NotTangent, "generator is not anti-Hermitian");
  ComplexMatrix frame = projection_frame(base);
  ComplexMatrix local = frame.adjoint() * generator * frame;
  if (max_abs(local.topLeftCorner(n, n)) > tol.membership * scale ||
      max_abs(local.bottomRightCorner(n, n)) > tol.membership * scale)
    throw Error(Errc::NotTangent, "generator is not codiagonal with respect to the base");
  return Geodesic(base, std::move(frame), TangentVector{local.bottomLeftCorner(n, n)}, false);
}

ComplexMatrix Geodesic::matrix_at(double t) const {
  if (trivial_frame_)
    return geodesic_matrix(local_, t);
  return hermitian_part(frame_ * geodesic_matrix(local_, t) * frame_.adjoint());
}

SphereProjection Geodesic::at(double t, const Tolerances &tol) const {
  return SphereProjection::from_matrix(matrix_at(t), tol);
}

ComplexMatrix Geodesic::generator() const {
  return frame_ * local_.generator() * frame_.adjoint();
}

IntersectionBases intersection_bases(const SphereProjection &p, const SphereProjection &q,
                                     double threshold) {
  if (p.n() != q.n())
    throw Error(Errc::DimensionMismatch, "projections of different size");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian_part(p.matrix() - q.matrix()));
  const RealVector &values = solver.eigenvalues();
  const Eigen::Index dim = values.size();
  Eigen::Index minus = 0, plus = 0;
  while (minus < dim && values(minus) < -1.0 + threshold)
    ++minus;
  while (plus < dim && values(dim - 1 - plus) > 1.0 - threshold)
    ++plus;
  IntersectionBases out;
  out.range_kernel = solver.eigenvectors().rightCols(plus);
  out.kernel_range = solver.eigenvectors().leftCols(minus);
  fix_phases(out.range_kernel);
  fix_phases(out.kernel_range);
  return out;
}

Geodesic connecting_geodesic(const SphereProjection &p, const SphereProjection &q,
                             const ComplexMatrix &from, const ComplexMatrix &to,
                             const ComplexMatrix &pairing, const Tolerances &tol) {
  const Eigen::Index dim = p.matrix().rows();
  const Eigen::Index k = from.cols();
  if (q.matrix().rows() != dim || from.rows() != dim || to.rows() != dim ||
      to.cols() != k || pairing.rows() != k || pairing.cols() != k)
    throw Error(Errc::DimensionMismatch, "inconsistent intersection bases");
  if (k > 0) {
    if (!is_unitary(pairing, tol.membership))
      throw Error(Errc::NotUnitary, "pairing is not unitary");
    const double slack = std::sqrt(tol.membership);
    if (max_abs(p.matrix() * from - from) > slack || max_abs(q.matrix() * from) > slack ||
        max_abs(p.matrix() * to) > slack || max_abs(q.matrix() * to - to) > slack)
      throw Error(Errc::InvalidArgument, "bases do not span the intersections");
  }

  // Quarter turn taking from[:, j] to (to * pairing)[:, j].
  constexpr double kQuarter = std::numbers::pi / 2;
  ComplexMatrix gen = kQuarter * (to * pairing * from.adjoint() -
                                  from * pairing.adjoint() * to.adjoint());

  const Eigen::Index rest = dim - 2 * k;
  if (rest > 0) {
    ComplexMatrix span(dim, 2 * k);
    span << from, to;
    ComplexMatrix rest_basis =
        k > 0 ? kernel_basis(span.adjoint(), tol.rank) : identity(dim);
    if (rest_basis.cols() != rest)
      throw Error(Errc::NoGeodesicFound, "intersection bases are not orthonormal");
    SphereProjection pr =
        SphereProjection::from_matrix(rest_basis.adjoint() * p.matrix() * rest_basis, tol);
    SphereProjection qr =
        SphereProjection::from_matrix(rest_basis.adjoint() * q.matrix() * rest_basis, tol);
    gen += rest_basis * log_general(pr, qr, 0.0, tol) * rest_basis.adjoint();
  }
  return Geodesic::from_generator(p, gen, tol);
}

Geodesic connecting_geodesic(const SphereProjection &p, const SphereProjection &q,
                             const Tolerances &tol) {
  IntersectionBases bases = intersection_bases(p, q);
  const Eigen::Index k = bases.range_kernel.cols();
  if (bases.kernel_range.cols() != k)
    throw Error(Errc::NoGeodesicFound,
                "dim(ran p & ker q) = " + std::to_string(k) + " but dim(ker p & ran q) = " +
                    std::to_string(bases.kernel_range.cols()));
  return connecting_geodesic(p, q, bases.range_kernel, bases.kernel_range, identity(k),
                             tol);
}

} // namespace rsphere
