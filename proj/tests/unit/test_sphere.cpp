#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "oracles.hpp"
#include "rsphere/error.hpp"
#include "rsphere/sampling.hpp"
#include "rsphere/sphere.hpp"

using namespace rsphere;
using rsphere::testing::conjugate_by_exp;
using rsphere::testing::max_entry;

namespace {

constexpr double kPi = std::numbers::pi;

// Scalar case: projection onto the line at angle theta from e1.
SphereProjection planar(double theta) {
  ComplexMatrix m(2, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  m << c * c, c * s, c * s, s * s;
  return SphereProjection::from_matrix(m);
}

ComplexMatrix scalar(double x) { return ComplexMatrix::Constant(1, 1, x); }

template <class F> Errc code_of(F &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

ComplexMatrix random_codiagonal(Sampler &rng, const ComplexMatrix &p) {
  ComplexMatrix b = rng.gaussian(p.rows(), p.cols());
  ComplexMatrix q = identity(p.rows()) - p;
  return q * b * p + p * b.adjoint() * q;
}

} // namespace

TEST_CASE("chart status flags") {
  CHECK(chart_status(SphereProjection::origin(2)).all());
  ComplexMatrix flipped = identity(4) - SphereProjection::origin(2).matrix();
  CHECK(chart_status(SphereProjection::from_matrix(flipped)).none());
  ComplexMatrix m(2, 2);
  const double r3 = std::sqrt(3.0);
  m << 0.25, r3 / 4, r3 / 4, 0.75;
  CHECK(chart_status(SphereProjection::from_matrix(m)).all());

  Sampler rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    ComplexMatrix u = rng.unitary(2 * n);
    if (trial % 2 == 0) {
      // put a vector of ker p0 into the range
      u.col(0).setZero();
      u(2 * n - 1, 0) = 1.0;
      u = Eigen::HouseholderQR<ComplexMatrix>(u).householderQ();
    }
    ComplexMatrix col = u.leftCols(n);
    ChartStatus st = chart_status(SphereProjection::from_matrix(col * col.adjoint()));
    CHECK(st.consistent());
    if (trial % 2 == 0)
      CHECK(st.none());
  }
}

TEST_CASE("principal chart and its inverse") {
  CHECK(max_entry(phi0(SphereProjection::origin(3))) < 1e-15);
  ComplexMatrix half(4, 4);
  half << identity(2), identity(2), identity(2), identity(2);
  CHECK(max_entry(phi0(SphereProjection::from_matrix(half / 2.0)) - identity(2)) < 1e-14);
  CHECK(max_entry(phi0_inv(ComplexMatrix::Zero(2, 2)).matrix() -
                  SphereProjection::origin(2).matrix()) == 0.0);
  CHECK(max_entry(phi0_inv(scalar(1.0)).matrix() - ComplexMatrix::Constant(2, 2, 0.5)) <
        1e-15);
  ComplexMatrix flipped = identity(2) - SphereProjection::origin(1).matrix();
  CHECK(code_of([&] { phi0(SphereProjection::from_matrix(flipped)); }) == Errc::NotInChart);

  Sampler rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    ComplexMatrix a = rng.gaussian(n, n);
    SphereProjection p = phi0_inv(a);
    CHECK(max_entry(phi0(p) - a) < 1e-10);
    ComplexMatrix xi = rng.gaussian(n, 1);
    ComplexMatrix v(2 * n, 1);
    v << xi, a * xi;
    CHECK(max_entry(p.matrix() * v - v) < 1e-12);
  }
}

TEST_CASE("chart transitions") {
  Sampler rng(33);
  ComplexMatrix a = rng.gaussian(2, 2);
  CHECK(max_entry(chart_transition(identity(4), identity(4), a) - a) < 1e-14);
  CHECK(max_entry(chart_transition(block_swap(2), identity(4), a) - a.inverse()) < 1e-12);
  CHECK(code_of([] {
          chart_transition(block_swap(1), identity(2), ComplexMatrix::Zero(1, 1));
        }) == Errc::MobiusPole);

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    ComplexMatrix u1 = rng.unitary(2 * n), v1 = rng.unitary(2 * n);
    ComplexMatrix u2 = rng.unitary(2 * n), v2 = rng.unitary(2 * n);
    ComplexMatrix b = rng.gaussian(n, n);
    ComplexMatrix inner = chart_transition(u2, v2, b);
    ComplexMatrix composed = chart_transition(u1, v1, inner);
    ComplexMatrix direct = chart_transition(u2 * v2 * u1 * v1, identity(2 * n), b);
    CHECK(max_entry(composed - direct) < 1e-9 * (1.0 + max_entry(direct)));
    // the transition describes the same point of the sphere
    ComplexMatrix m = (u2 * v2).adjoint();
    CHECK(max_entry(phi0_inv(inner).matrix() -
                    m * phi0_inv(b).matrix() * m.adjoint()) < 1e-9);
  }
}

TEST_CASE("closed-form geodesics") {
  TangentVector zero{ComplexMatrix::Zero(2, 2)};
  CHECK(max_entry(exp_p0(zero).matrix() - SphereProjection::origin(2).matrix()) == 0.0);
  ComplexMatrix flipped = identity(2) - SphereProjection::origin(1).matrix();
  CHECK(max_entry(exp_p0({scalar(kPi / 2)}).matrix() - flipped) < 1e-15);
  CHECK(max_entry(exp_p0({scalar(kPi / 4)}).matrix() - ComplexMatrix::Constant(2, 2, 0.5)) <
        1e-15);

  Sampler rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    TangentVector x{rng.block_with_norm(n, rng.uniform(0.0, kPi))};
    const double t = rng.uniform(-2.0, 2.0);
    CHECK(max_entry(geodesic_eval(x, 0.0).matrix() - SphereProjection::origin(n).matrix()) <
          1e-14);
    CHECK(max_entry(geodesic_eval(x, 1.0).matrix() - exp_p0(x).matrix()) == 0.0);
    ComplexMatrix oracle =
        conjugate_by_exp(t * x.generator(), SphereProjection::origin(n).matrix());
    CHECK(max_entry(geodesic_eval(x, t).matrix() - oracle) < 1e-10);
  }
}

TEST_CASE("closed-form logarithm") {
  CHECK(max_entry(log_p0(SphereProjection::origin(2)).a) == 0.0);
  CHECK(std::abs(std::abs(log_p0(planar(kPi / 6)).a(0, 0)) - kPi / 6) < 1e-14);
  CHECK(code_of([] { log_p0(planar(kPi / 3)); }) == Errc::OutsideLogDomain);

  Sampler rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    TangentVector x{rng.block_with_norm(n, rng.uniform(0.0, kPi / 4 - 1e-3))};
    CHECK(max_entry(log_p0(exp_p0(x)).a - x.a) < 1e-10);
  }
}

TEST_CASE("general logarithm and distance") {
  SphereProjection p0 = SphereProjection::origin(1);
  CHECK(max_entry(log_general(p0, p0)) == 0.0);
  ComplexMatrix g = log_general(p0, planar(kPi / 3));
  CHECK(std::abs(op_norm(g) - kPi / 3) < 1e-14);
  CHECK(max_entry(conjugate_by_exp(g, p0.matrix()) - planar(kPi / 3).matrix()) < 1e-14);
  CHECK(finsler_dist(p0, p0) == 0.0);
  CHECK(std::abs(finsler_dist(p0, planar(kPi / 6)) - kPi / 6) < 1e-14);
  CHECK(code_of([&] { log_general(p0, planar(kPi / 2)); }) == Errc::ProjectionsTooFar);

  Sampler rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    TangentVector x{rng.block_with_norm(n, rng.uniform(0.0, kPi / 4 - 1e-3))};
    SphereProjection q = exp_p0(x);
    SphereProjection origin = SphereProjection::origin(n);
    ComplexMatrix gen = log_general(origin, q);
    ComplexMatrix commutator = x.hermitian() * origin.matrix() -
                               origin.matrix() * x.hermitian();
    CHECK(max_entry(gen - commutator) < 1e-10);

    SphereProjection p = rng.projection(n), r = rng.projection(n);
    if (op_norm(p.matrix() - r.matrix()) < 0.99) {
      ComplexMatrix l = log_general(p, r);
      CHECK(max_entry(conjugate_by_exp(l, p.matrix()) - r.matrix()) < 1e-9);
      CHECK(op_norm(l) < kPi / 2);
      CHECK(std::abs(std::sin(finsler_dist(p, r)) - op_norm(p.matrix() - r.matrix())) < 1e-9);
    }
  }
}

TEST_CASE("angle operator") {
  AngleParts zero = angle(SphereProjection::origin(2));
  CHECK(max_entry(zero.phi) < 1e-15);
  CHECK(max_entry(zero.w) == 0.0);
  AngleParts a = angle(planar(kPi / 6));
  CHECK(std::abs(a.phi(0, 0).real() - kPi / 6) < 1e-14);
  CHECK(std::abs(a.w(0, 0) - Complex(1.0)) < 1e-14);

  // direct sum of two planar rotations with angles pi/8 and pi/6
  TangentVector x{ComplexMatrix::Zero(2, 2)};
  x.a(0, 0) = kPi / 8;
  x.a(1, 1) = kPi / 6;
  AngleParts d = angle(exp_p0(x));
  CHECK(max_entry(d.phi - x.a) < 1e-14);

  Sampler rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    TangentVector y{rng.block_with_norm(n, rng.uniform(0.01, kPi / 4 - 1e-3))};
    SphereProjection p = exp_p0(y);
    AngleParts parts = angle(p);
    CHECK(std::abs(op_norm(parts.phi) - finsler_dist(SphereProjection::origin(n), p)) < 1e-9);
    ComplexMatrix modulus = herm_fun(y.hermitian(), [](double v) { return std::abs(v); });
    ComplexMatrix expected = ComplexMatrix::Zero(2 * n, 2 * n);
    expected.topLeftCorner(n, n) = parts.phi;
    expected.bottomRightCorner(n, n) = parts.w * parts.phi * parts.w.adjoint();
    CHECK(max_entry(modulus - expected) < 1e-9);
  }
}

TEST_CASE("complementary cross ratio") {
  PolarParts zero = complementary_cross_ratio(SphereProjection::origin(2));
  CHECK(max_entry(zero.modulus) == 0.0);
  CHECK(max_entry(zero.isometry) == 0.0);
  PolarParts c = complementary_cross_ratio(planar(kPi / 6));
  CHECK(max_entry(c.modulus - (std::sqrt(3.0) / 4) * identity(2)) < 1e-15);

  Sampler rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    SphereProjection p = rng.projection(n);
    PolarParts parts = complementary_cross_ratio(p);
    ComplexMatrix comm = parts.isometry * parts.modulus;
    CHECK(max_entry(comm + comm.adjoint()) < 1e-12);
    ComplexMatrix p0 = SphereProjection::origin(n).matrix();
    CHECK(max_entry(comm - (p0 * p.matrix() - p.matrix() * p0)) < 1e-12);
  }
}

TEST_CASE("parallel transport") {
  std::vector<SphereProjection> still(9, SphereProjection::origin(2));
  CHECK(max_entry(parallel_transport(still, 1.0, 4).unitary - identity(4)) < 1e-15);

  Sampler rng(39);
  const Eigen::Index n = 3;
  TangentVector x{rng.block_with_norm(n, 1.2)};
  const int steps = 200;
  std::vector<SphereProjection> path;
  for (int k = 0; k <= 2 * steps; ++k)
    path.push_back(geodesic_eval(x, static_cast<double>(k) / (2 * steps)));
  TransportResult result = parallel_transport(path, 1.0, steps);
  ComplexMatrix exact = rsphere::testing::expm(x.generator());
  CHECK(op_norm(result.unitary - exact) < 1e-6);
  CHECK(result.error_estimate < 1e-6);
  const ComplexMatrix &g = result.unitary;
  CHECK(max_entry(g.adjoint() * g - identity(2 * n)) < 1e-8);
  CHECK(max_entry(g * path.front().matrix() * g.adjoint() - path.back().matrix()) < 1e-8);
  // a tangent at the start stays codiagonal with respect to the end
  ComplexMatrix y = random_codiagonal(rng, path.front().matrix());
  ComplexMatrix moved = g * y * g.adjoint();
  const ComplexMatrix &pe = path.back().matrix();
  CHECK(max_entry(moved * pe - (identity(2 * n) - pe) * moved) < 1e-8);

  std::vector<SphereProjection> coarse = {geodesic_eval(x, 0.0), geodesic_eval(x, 0.5),
                                          geodesic_eval(x, 1.0), geodesic_eval(x, 1.5),
                                          geodesic_eval(x, 2.0)};
  CHECK(code_of([&] { parallel_transport(coarse, 2.0, 2); }) == Errc::PathTooCoarse);
}

TEST_CASE("tangent chart maps") {
  Sampler rng(40);
  ComplexMatrix adot = rng.gaussian(2, 2);
  ComplexMatrix y = ComplexMatrix::Zero(4, 4);
  y.topRightCorner(2, 2) = adot.adjoint();
  y.bottomLeftCorner(2, 2) = adot;
  SphereProjection origin = SphereProjection::origin(2);
  CHECK(max_entry(tangent_chart(origin, y) - adot) < 1e-14);
  CHECK(max_entry(tangent_chart(origin, ComplexMatrix::Zero(4, 4))) == 0.0);
  CHECK(max_entry(tangent_chart_inv(ComplexMatrix::Zero(2, 2), adot) - y) < 1e-15);
  CHECK(max_entry(tangent_chart_inv(adot, ComplexMatrix::Zero(2, 2))) == 0.0);
  CHECK(std::abs(finsler_pullback_norm(ComplexMatrix::Zero(2, 2), adot) - op_norm(adot)) <
        1e-14);
  CHECK(finsler_pullback_norm(adot, ComplexMatrix::Zero(2, 2)) == 0.0);
  CHECK(code_of([&] { tangent_chart(origin, identity(4)); }) == Errc::NotTangent);

  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    ComplexMatrix a = rng.gaussian(n, n), da = rng.gaussian(n, n);
    SphereProjection p = phi0_inv(a);
    ComplexMatrix tangent = tangent_chart_inv(a, da);
    // Hermitian, codiagonal, derivative of the graph projection
    CHECK(max_entry(tangent - tangent.adjoint()) < 1e-12);
    ComplexMatrix pm = p.matrix();
    CHECK(max_entry(tangent * pm - (identity(2 * n) - pm) * tangent) < 1e-10);
    auto curve = [&](double s) -> ComplexMatrix { return phi0_inv(a + s * da).matrix(); };
    CHECK(max_entry(rsphere::testing::central_difference(curve, 0.0) - tangent) < 1e-7);
    CHECK(max_entry(tangent_chart(p, tangent) - da) < 1e-9);

    // chain rule along a geodesic, by finite differences of phi0
    TangentVector x{rng.block_with_norm(n, 0.6)};
    const double t = 0.4;
    auto chart_curve = [&](double s) -> ComplexMatrix { return phi0(geodesic_eval(x, s)); };
    ComplexMatrix velocity = rsphere::testing::central_difference(
        [&](double s) -> ComplexMatrix { return geodesic_eval(x, s).matrix(); }, t);
    velocity = (velocity + velocity.adjoint()) / 2.0;
    CHECK(max_entry(rsphere::testing::central_difference(chart_curve, t) -
                    tangent_chart(geodesic_eval(x, t), velocity, {1e-8, 1e-10, 1e-6})) < 1e-6);

    // unitary invariance of the pulled-back norm
    ComplexMatrix w = rng.unitary(n);
    CHECK(std::abs(finsler_pullback_norm(w * a, w * da) - finsler_pullback_norm(a, da)) <
          1e-10);
  }
}

TEST_CASE("rsp isomorphism") {
  ComplexMatrix p = SphereProjection::origin(1).matrix();
  ComplexMatrix swap = block_swap(1);
  ComplexMatrix jp = rsp_isomorphism(p, p, swap);
  ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  CHECK(max_entry(jp - e11) < 1e-15);
  CHECK(max_entry(rsp_isomorphism(identity(2), p, swap) - identity(2)) < 1e-15);
  CHECK(code_of([&] { rsp_isomorphism(p, p, identity(2)); }) == Errc::NotRsp);

  Sampler rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    // p = w p0 w*, u = w swap w*
    ComplexMatrix w = rng.unitary(2 * n);
    ComplexMatrix pp = w * SphereProjection::origin(n).matrix() * w.adjoint();
    ComplexMatrix uu = w * block_swap(n) * w.adjoint();
    ComplexMatrix m1 = rng.gaussian(2 * n, 2 * n), m2 = rng.gaussian(2 * n, 2 * n);
    ComplexMatrix j1 = rsp_isomorphism(m1, pp, uu), j2 = rsp_isomorphism(m2, pp, uu);
    CHECK(max_entry(rsp_isomorphism(m1 * m2, pp, uu) - j1 * j2) < 1e-10);
    CHECK(max_entry(rsp_isomorphism(m1.adjoint(), pp, uu) - j1.adjoint()) < 1e-10);
    CHECK(std::abs(op_norm(j1) - op_norm(m1)) < 1e-10);
    CHECK(max_entry(rsp_inverse(j1, pp, uu) - m1) < 1e-10);
  }
}

TEST_CASE("geodesics at a general base and connecting geodesics") {
  Sampler rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    SphereProjection p = rng.projection(n), q = rng.projection(n);
    Geodesic g = connecting_geodesic(p, q);
    CHECK(max_entry(g.matrix_at(0.0) - p.matrix()) < 1e-10);
    CHECK(max_entry(g.matrix_at(1.0) - q.matrix()) < 1e-9);
    CHECK(g.speed() <= kPi / 2 + 1e-12);
    ComplexMatrix oracle = conjugate_by_exp(0.3 * g.generator(), p.matrix());
    CHECK(max_entry(g.matrix_at(0.3) - oracle) < 1e-10);
  }
  // opposite points: p0 and 1 - p0 are joined through the intersections
  SphereProjection origin = SphereProjection::origin(2);
  SphereProjection opposite = SphereProjection::from_matrix(identity(4) - origin.matrix());
  Geodesic g = connecting_geodesic(origin, opposite);
  CHECK(max_entry(g.matrix_at(1.0) - opposite.matrix()) < 1e-12);
  CHECK(std::abs(g.speed() - kPi / 2) < 1e-12);
}
