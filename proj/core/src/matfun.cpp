#include "rsphere/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rsphere/error.hpp"

namespace rsphere {

namespace {

constexpr double kPi = std::numbers::pi;

// Above this size divide and conquer is far faster than one-sided Jacobi.
constexpr Eigen::Index kJacobiLimit = 16;

// Eigenvalues of (u + u*)/2 closer than this share a Schur block.
constexpr double kClusterWidth = 1e-3;

template <class Solver> SvdFactors collect(const Solver &svd) {
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double max_abs(const ComplexMatrix &a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

[[noreturn]] void out_of_domain(ScalarFunction f, double lambda) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "eigenvalue " << lambda << " outside the domain of "
      << function_name(f);
  throw Error(Errc::SpectrumOutOfDomain, msg.str());
}

// Validates one eigenvalue against the domain of f and returns the value
// that should be fed to the scalar function (clamped within slack).
double admit(ScalarFunction f, double x, const Tolerances &tol) {
  switch (f) {
  case ScalarFunction::Arcsin:
  case ScalarFunction::Asinc:
  case ScalarFunction::Arccos:
    if (std::abs(x) > 1.0 + tol.domain)
      out_of_domain(f, x);
    return std::clamp(x, -1.0, 1.0);
  case ScalarFunction::Sqrt:
    if (x < -tol.domain)
      out_of_domain(f, x);
    return std::max(x, 0.0);
  case ScalarFunction::Tan: {
    // distance from x to the nearest pi/2 + k pi
    double shifted = std::remainder(x - kPi / 2, kPi);
    if (std::abs(shifted) < tol.pole_guard)
      out_of_domain(f, x);
    return x;
  }
  default:
    return x;
  }
}

Complex evaluate(ScalarFunction f, double x) {
  switch (f) {
  case ScalarFunction::Cos: return std::cos(x);
  case ScalarFunction::Sin: return std::sin(x);
  case ScalarFunction::Sinc: return sinc(x);
  case ScalarFunction::Tan: return std::tan(x);
  case ScalarFunction::Arcsin: return std::asin(x);
  case ScalarFunction::Asinc: return asinc(x);
  case ScalarFunction::Arctan: return std::atan(x);
  case ScalarFunction::Arccos: return std::acos(x);
  case ScalarFunction::Sqrt: return std::sqrt(x);
  case ScalarFunction::Square: return x * x;
  case ScalarFunction::ExpI: return std::polar(1.0, x);
  }
  return 0.0;
}

bool is_real_valued(ScalarFunction f) { return f != ScalarFunction::ExpI; }

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
  return (a + a.adjoint()) / 2.0;
}

} // namespace

const char *function_name(ScalarFunction f) noexcept {
  switch (f) {
  case ScalarFunction::Cos: return "cos";
  case ScalarFunction::Sin: return "sin";
  case ScalarFunction::Sinc: return "sinc";
  case ScalarFunction::Tan: return "tan";
  case ScalarFunction::Arcsin: return "arcsin";
  case ScalarFunction::Asinc: return "asinc";
  case ScalarFunction::Arctan: return "arctan";
  case ScalarFunction::Arccos: return "arccos";
  case ScalarFunction::Sqrt: return "sqrt";
  case ScalarFunction::Square: return "square";
  case ScalarFunction::ExpI: return "exp_i";
  }
  return "?";
}

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double asinc(double x) noexcept {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 + x2 / 6.0 + 3.0 * x2 * x2 / 40.0;
  }
  return std::asin(x) / x;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

bool is_hermitian(const ComplexMatrix &a, double tol) {
  if (a.rows() != a.cols())
    return false;
  return max_abs(a - a.adjoint()) <= tol * std::max(1.0, max_abs(a));
}

bool is_unitary(const ComplexMatrix &u, double tol) {
  if (u.rows() != u.cols())
    return false;
  return max_abs(u.adjoint() * u - identity(u.rows())) <= tol;
}

ComplexMatrix HermitianEigen::apply(const std::function<Complex(double)> &f) const {
  Eigen::VectorXcd fv(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    fv(i) = f(values(i));
  return vectors * fv.asDiagonal() * vectors.adjoint();
}

HermitianEigen hermitian_eigen(const ComplexMatrix &a, const Tolerances &tol) {
  if (!is_hermitian(a, tol.membership))
    throw Error(Errc::NotHermitian, "matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix herm_fun(const ComplexMatrix &a, ScalarFunction f,
                       const Tolerances &tol) {
  HermitianEigen eig = hermitian_eigen(a, tol);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    eig.values(i) = admit(f, eig.values(i), tol);
  ComplexMatrix out = eig.apply([f](double x) { return evaluate(f, x); });
  return is_real_valued(f) ? hermitian_part(out) : out;
}

ComplexMatrix herm_fun(const ComplexMatrix &a,
                       const std::function<double(double)> &f,
                       const Tolerances &tol) {
  HermitianEigen eig = hermitian_eigen(a, tol);
  return hermitian_part(eig.apply([&f](double x) { return Complex(f(x)); }));
}

PolarParts polar(const ComplexMatrix &a, const Tolerances &tol) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (a.size() == 0)
    return {ComplexMatrix::Zero(m, n), ComplexMatrix::Zero(n, n)};
  const SvdFactors svd = svd_factors(a);
  const RealVector &s = svd.values;
  const double threshold = tol.rank * std::max(1.0, s(0));
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > threshold)
    ++r;
  ComplexMatrix u = svd.left.leftCols(r);
  ComplexMatrix v = svd.right.leftCols(r);
  PolarParts parts;
  parts.isometry = u * v.adjoint();
  parts.modulus = v * s.head(r).cast<Complex>().asDiagonal() * v.adjoint();
  parts.modulus = hermitian_part(parts.modulus);
  if (r == 0) {
    parts.isometry = ComplexMatrix::Zero(m, n);
    parts.modulus = ComplexMatrix::Zero(n, n);
  }
  return parts;
}

RealVector singular_values(const ComplexMatrix &a) {
  if (a.size() == 0)
    return RealVector();
  if (std::min(a.rows(), a.cols()) > kJacobiLimit)
    return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
}

SvdFactors svd_factors(const ComplexMatrix &a) {
  constexpr unsigned full = Eigen::ComputeFullU | Eigen::ComputeFullV;
  if (std::min(a.rows(), a.cols()) > kJacobiLimit)
    return collect(Eigen::BDCSVD<ComplexMatrix>(a, full));
  return collect(Eigen::JacobiSVD<ComplexMatrix>(a, full));
}

double op_norm(const ComplexMatrix &a) {
  if (a.size() == 0)
    return 0.0;
  // Differences of projections are Hermitian; their norm is the spectral
  // radius, which a symmetric eigensolver finds much faster than an SVD.
  // Generators are anti-Hermitian; i a is then exactly Hermitian.
  const bool square = a.rows() == a.cols();
  if (square && (a == a.adjoint() || a == -a.adjoint())) {
    const ComplexMatrix h = a == a.adjoint() ? a : ComplexMatrix(Complex(0.0, 1.0) * a);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
    const RealVector &ev = eig.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  return singular_values(a)(0);
}

ComplexMatrix principal_log_unitary(const ComplexMatrix &u, double gap,
                                    const Tolerances &tol) {
  if (!is_unitary(u, tol.membership))
    throw Error(Errc::NotUnitary, "matrix is not unitary within tolerance");
  // u is normal, so every spectral subspace of (u + u*)/2 is u-invariant.
  // Clusters of that Hermitian matrix split u into small blocks whose Schur
  // forms are cheap; a single dense complex Schur form is not.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((u + u.adjoint()) / 2.0);
  const RealVector &c = solver.eigenvalues();
  const ComplexMatrix &v = solver.eigenvectors();
  const Eigen::Index n = u.rows();
  ComplexMatrix vectors(n, n);
  RealVector phases(n);
  for (Eigen::Index first = 0; first < n;) {
    Eigen::Index last = first + 1;
    while (last < n && c(last) - c(last - 1) <= kClusterWidth)
      ++last;
    const Eigen::Index m = last - first;
    const auto basis = v.middleCols(first, m);
    const ComplexMatrix block = basis.adjoint() * u * basis;
    if (m == 1) {
      vectors.col(first) = basis.col(0);
      phases(first) = std::arg(block(0, 0));
    } else {
      Eigen::ComplexSchur<ComplexMatrix> schur(block);
      vectors.middleCols(first, m) = basis * schur.matrixU();
      for (Eigen::Index j = 0; j < m; ++j)
        phases(first + j) = std::arg(schur.matrixT()(j, j));
    }
    first = last;
  }
  const double widest = n ? phases.cwiseAbs().maxCoeff() : 0.0;
  if (widest > kPi - gap) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "eigenphase " << widest << " within " << gap << " of -1";
    throw Error(Errc::SpectrumTouchesMinusOne, msg.str());
  }
  ComplexMatrix l =
      vectors * (Complex(0.0, 1.0) * phases.cast<Complex>()).asDiagonal() * vectors.adjoint();
  return (l - l.adjoint()) / 2.0;
}

int rank_eps(const ComplexMatrix &a, double tol) {
  if (a.size() == 0)
    return 0;
  RealVector s = singular_values(a);
  const double threshold = tol * std::max(1.0, s(0));
  return static_cast<int>((s.array() > threshold).count());
}

ComplexMatrix kernel_basis(const ComplexMatrix &a, double tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0)
    return identity(n);
  const SvdFactors svd = svd_factors(a);
  const RealVector &s = svd.values;
  const double threshold = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > threshold)
    ++r;
  return svd.right.rightCols(n - r);
}

} // namespace rsphere
