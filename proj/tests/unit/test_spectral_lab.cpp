#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rsphere/error.hpp"
#include "rsphere/sampling.hpp"
#include "rsphere/spectral_lab.hpp"

using namespace rsphere;
using rsphere::testing::max_entry;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F> Errc code_of(F &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values)
    v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

ComplexMatrix rotating_basis(const KernelPair &pair) {
  const Eigen::Index n = pair.kernel.rows(), k = pair.kernel.cols();
  ComplexMatrix b = ComplexMatrix::Zero(2 * n, 2 * k);
  b.topLeftCorner(n, k) = pair.cokernel;
  b.bottomRightCorner(n, k) = pair.kernel;
  return b;
}

} // namespace

TEST_CASE("Fourier truncation layout") {
  FourierTruncation trunc(2);
  CHECK(trunc.dimension() == 5);
  CHECK(trunc.indices() == std::vector<int>{-2, -1, 0, 1, 2});
  CHECK(trunc.frequency(2) == 0);
  CHECK(code_of([] { FourierTruncation bad(0); }) == Errc::ParameterOutOfRange);
  ComplexMatrix d = build_diff_op(trunc);
  CHECK(std::abs(d(4, 4).real() - 4.0 * kPi) < 1e-15);
  CHECK(std::abs(d(0, 0).real() + 4.0 * kPi) < 1e-15);
}

TEST_CASE("blocks of the graph projection of the derivative") {
  FourierTruncation trunc(3);
  DiffGraphBlocks b = diff_graph_blocks(trunc);
  const Eigen::Index one = 4; // frequency 1
  CHECK(std::abs(b.d1(one) - 0.02470) < 1e-5);
  CHECK(std::abs(b.d2(one) - 2.0 * kPi / (1.0 + 4.0 * kPi * kPi)) < 1e-16);
  CHECK(std::abs(b.d2(one) - 0.15522) < 1e-5);
  CHECK(std::abs(b.d3(one) - 0.97530) < 1e-5);
  CHECK(std::abs(b.d2(2) + b.d2(one)) < 1e-16);
  CHECK(b.d1(3) == 1.0);
  CHECK(b.d2(3) == 0.0);
  CHECK(b.d3(3) == 0.0);
  CHECK(max_entry(b.assembled() - proj_graph(build_diff_op(trunc)).matrix()) < 1e-14);
}

TEST_CASE("mode angles") {
  CHECK(std::abs(mode_angle(1) - 1.41297) < 1e-5);
  CHECK(mode_angle(0) == 0.0);
  CHECK(mode_angle(-3) == mode_angle(3));
  for (int n = 1; n < 50; ++n)
    CHECK(mode_angle(n) < mode_angle(n + 1));
}

TEST_CASE("generator rotates the origin onto the graph") {
  for (int n : {1, 2, 5}) {
    FourierTruncation trunc(n);
    const Complex i(0.0, 1.0);
    ComplexMatrix z = z0_generator(trunc);
    CHECK(max_entry(z - z.adjoint()) < 1e-15);
    ComplexMatrix rotated = rsphere::testing::conjugate_by_exp(
        i * z, SphereProjection::origin(trunc.dimension()).matrix());
    CHECK(max_entry(rotated - diff_graph_blocks(trunc).assembled()) < 1e-10);
    Geodesic g = diff_geodesic(trunc);
    for (double t : {0.0, 0.3, 1.0})
      CHECK(max_entry(g.matrix_at(t) -
                      rsphere::testing::conjugate_by_exp(
                          (i * t) * z, SphereProjection::origin(trunc.dimension()).matrix())) <
            1e-10);
    CHECK(std::abs(g.speed() - mode_angle(n)) < 1e-14);
  }
}

TEST_CASE("deformation through bounded operators") {
  FourierTruncation trunc(1);
  ComplexMatrix half = deformation_T(trunc, 0.5);
  // tan(arctan(2 pi) / 2) = 0.853431...
  const double expected = std::tan(0.5 * std::atan(2.0 * kPi));
  CHECK(std::abs(expected - 0.853431) < 1e-6);
  CHECK(std::abs(half(2, 2).real() - expected) < 1e-15);
  CHECK(std::abs(half(0, 0).real() + expected) < 1e-15);
  CHECK(half(1, 1) == Complex(0.0));
  CHECK(code_of([&] { deformation_T(trunc, 1.0); }) == Errc::ParameterOutOfRange);
  Geodesic g = diff_geodesic(trunc);
  for (double t : {0.1, 0.5, 0.9})
    CHECK(max_entry(proj_graph(deformation_T(trunc, t)).matrix() - g.matrix_at(t)) < 1e-12);
}

TEST_CASE("norm growth approaches the analytic limit") {
  NormGrowth g = norm_growth(FourierTruncation(64), 0.5);
  CHECK(std::abs(g.analytic_limit - 1.0) < 1e-15);
  CHECK(std::abs(g.truncated_norm - std::tan(0.5 * std::atan(128.0 * kPi))) < 1e-15);
  CHECK(op_norm(deformation_T(FourierTruncation(64), 0.5)) == doctest::Approx(g.truncated_norm));
  // the gap is about 2.49e-3 at this truncation
  const double gap = (g.analytic_limit - g.truncated_norm) / g.analytic_limit;
  CHECK(gap > 0.0024);
  CHECK(gap < 0.0025);
  double previous = 0.0;
  for (int n : {1, 4, 16, 64, 256}) {
    const double norm = norm_growth(FourierTruncation(n), 0.9).truncated_norm;
    CHECK(norm > previous);
    CHECK(norm < std::tan(0.9 * kPi / 2));
    previous = norm;
  }
}

TEST_CASE("kernels of a square operator") {
  KernelPair none = kernel_pair(identity(3));
  CHECK(none.kernel.cols() == 0);
  CHECK(none.cokernel.cols() == 0);
  ComplexMatrix shift = ComplexMatrix::Zero(3, 3);
  shift(1, 0) = 1.0;
  shift(2, 1) = 1.0;
  KernelPair pair = kernel_pair(shift);
  REQUIRE(pair.kernel.cols() == 1);
  REQUIRE(pair.cokernel.cols() == 1);
  CHECK(std::abs(std::abs(pair.kernel(2, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(pair.cokernel(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("family of geodesics to the inverse graph") {
  ComplexMatrix f = diag({2.0, 0.0});
  SphereProjection target = proj_inv_graph(f);
  KernelPair pair = kernel_pair(f);
  ComplexMatrix basis = rotating_basis(pair);
  for (double theta : {0.0, 0.7, -2.0}) {
    ComplexMatrix u = ComplexMatrix::Constant(1, 1, std::polar(1.0, theta));
    Geodesic g = multi_geodesics(f, u);
    CHECK(max_entry(g.matrix_at(0.0) - SphereProjection::origin(2).matrix()) < 1e-12);
    CHECK(max_entry(g.matrix_at(1.0) - target.matrix()) < 1e-12);
    ComplexMatrix middle = basis.adjoint() * g.matrix_at(0.5) * basis;
    ComplexMatrix expected(2, 2);
    expected << 1.0, u(0, 0), std::conj(u(0, 0)), 1.0;
    CHECK(max_entry(middle - expected / 2.0) < 1e-12);
  }
  CHECK(code_of([&] { multi_geodesics(diag({1.0, 0.0}), identity(2)); }) ==
        Errc::DimensionMismatch);

  Sampler rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 3 + trial % 3, k = 1 + trial % 2;
    // rank n - k, so both kernels have dimension k
    ComplexMatrix g = rng.gaussian(n, n - k) * rng.gaussian(n - k, n);
    ComplexMatrix u = rng.unitary(k);
    Geodesic geo = multi_geodesics(g, u);
    CHECK(max_entry(geo.matrix_at(1.0) - proj_inv_graph(g).matrix()) < 1e-9);
    ComplexMatrix b = rotating_basis(kernel_pair(g));
    ComplexMatrix mid = b.adjoint() * geo.matrix_at(0.5) * b;
    CHECK(max_entry(mid.topRightCorner(k, k) - u / 2.0) < 1e-9);
    CHECK(max_entry(mid.topLeftCorner(k, k) - identity(k) / 2.0) < 1e-9);
  }
}

TEST_CASE("Jacobi fields") {
  const Complex i(0.0, 1.0);
  ComplexMatrix f = diag({0.0, 3.0, 0.0});
  ComplexMatrix udot(2, 2);
  udot << i, 1.0, -1.0, 0.5 * i;
  CHECK(max_entry(jacobi_field(f, udot, 0.0)) < 1e-16);
  CHECK(max_entry(jacobi_field(f, udot, 1.0)) < 1e-15);
  CHECK(code_of([&] { jacobi_field(f, identity(2), 0.5); }) == Errc::InvalidArgument);

  // finite differences of the family in the unitary parameter
  const double h = 1e-5;
  for (double t : {0.25, 0.5, 0.8}) {
    ComplexMatrix plus = multi_geodesics(f, rsphere::testing::expm(h * udot)).matrix_at(t);
    ComplexMatrix minus = multi_geodesics(f, rsphere::testing::expm(-h * udot)).matrix_at(t);
    ComplexMatrix numeric = (plus - minus) / (2.0 * h);
    CHECK(max_entry(numeric - jacobi_field(f, udot, t)) < 1e-8);
  }
}

TEST_CASE("conjugate index") {
  CHECK(conjugate_index(identity(3)).index == 0);
  CHECK(conjugate_index(identity(3)).kernel_dim == 0);
  ConjugateIndex one = conjugate_index(diag({1.0, 0.0}));
  CHECK(one.kernel_dim == 1);
  CHECK(one.index == 1);
  ConjugateIndex two = conjugate_index(diag({0.0, 5.0, 0.0}));
  CHECK(two.kernel_dim == 2);
  CHECK(two.index == 4);
  CHECK(two.gram_min > 0.1);
  CHECK(code_of([] { conjugate_index(ComplexMatrix::Zero(2, 3)); }) == Errc::IndexNonZero);
  CHECK(code_of([] { multi_geodesics(ComplexMatrix::Zero(2, 3), identity(1)); }) ==
        Errc::KernelMismatch);

  Sampler rng(72);
  for (int k = 0; k <= 3; ++k) {
    const Eigen::Index n = 4;
    ComplexMatrix g = k == 0 ? rng.gaussian(n, n)
                             : ComplexMatrix(rng.gaussian(n, n - k) * rng.gaussian(n - k, n));
    CHECK(conjugate_index(g).index == k * k);
  }
}
