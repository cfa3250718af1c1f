#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nctlab/errors.hpp"
#include "nctlab/geometry.hpp"

using namespace nct;

TEST_CASE("homogeneous Chern number") {
  CHECK(std::abs(chern_homogeneous(1, kI) - 1.0) <= 1e-12);
  CHECK(chern_homogeneous(0, kI) == 0.0);
  CHECK(std::abs(chern_homogeneous(3, cplx(0.5, 2.0)) - 3.0) <= 1e-12);
  for (int p = -2; p <= 3; ++p)
    for (cplx tau : {kI, cplx(0.3, 1.1), cplx(-0.7, 0.4)})
      CHECK(std::abs(chern_homogeneous(p, tau) - p) <= 1e-12);
  CHECK_THROWS_AS(chern_homogeneous(1, cplx(1, 0)), std::invalid_argument);
}

TEST_CASE("partition of unity") {
  auto c = partition_chi(0.0);
  CHECK(c.psi1 == 0.0);
  CHECK(c.psi2 == 1.0);
  c = partition_chi(0.5);
  CHECK(std::abs(c.psi1 - 1.0) < 1e-16);
  CHECK(std::abs(c.psi2) < 1e-16);
  c = partition_chi(1.0);
  CHECK(std::abs(c.psi1) < 1e-15);
  CHECK(std::abs(c.psi2 + 1.0) < 1e-16);
  for (int k = 0; k <= 100; ++k) {
    const auto q = partition_chi(k / 100.0);
    CHECK(std::abs(q.psi1 * q.psi1 + q.psi2 * q.psi2 - 1.0) < 1e-15);
  }
}

TEST_CASE("transition function") {
  for (double x : {0.0, 0.3, 0.9}) CHECK(transition_g(x, 0.25, 3) == cplx(1.0));
  CHECK(std::abs(transition_g(0.5, 0.75, 2) - 1.0) < 1e-15);
  CHECK(std::abs(transition_g(0.25, 0.75, 1) - kI) < 1e-15);
  CHECK(transition_g(0.25, 0.5, 1) == cplx(1.0));
  for (double y : {0.1, 0.6, 0.95}) CHECK(std::abs(std::abs(transition_g(0.37, y, 2)) - 1.0) < 1e-15);
}

TEST_CASE("projection field") {
  for (int p : {0, 1, 2, 3}) {
    const auto P = projection_P({64, 64}, p);
    CHECK(P.idempotency_defect() <= 1e-12);
    CHECK(P.hermiticity_defect() <= 1e-12);
    CHECK(P.trace_defect() <= 1e-12);
    CHECK(P.periodicity_defect() <= 1e-10);
  }
  const auto P = projection_P({16, 8}, 2);
  CHECK(P.size().nx == 16);
  // P = Psi Psi^dagger with Psi = (sin, g cos): off-diagonal entry sin cos conj(g)
  const double y = 6.0 / 8, x = 3.0 / 16;
  const cplx expect = std::sin(kPi * y) * std::cos(kPi * y) * std::conj(transition_g(x, y, 2));
  CHECK(std::abs(P.at(3, 6)(0, 1) - expect) < 1e-15);
  CHECK_THROWS_AS(projection_P({4, 8}, 1), std::invalid_argument);
}

TEST_CASE("curvature matches the closed form") {
  // Omega_xy = -2 pi i p d/dy cos^2(pi y) above y = 1/2, zero below.
  for (int p : {1, 3}) {
    const GridSize g{16, 32};
    const auto field = curvature_field(p, g);
    CHECK(field.values.size() == std::size_t((g.nx + 1) * (g.ny + 1)));
    double d = 0.0;
    for (int j = 0; j <= g.ny; ++j) {
      if (2 * j == g.ny) continue;
      const double y = double(j) / g.ny;
      const cplx expect = y > 0.5 ? cplx(0, 2 * kPi * kPi * p * std::sin(2 * kPi * y)) : cplx(0.0);
      for (int i = 0; i <= g.nx; ++i) d = std::max(d, std::abs(field.at(i, j) - expect));
    }
    CHECK(d < 1e-11);
    for (cplx v : field.values) CHECK(std::abs(v.real()) < 1e-12);
  }
}

TEST_CASE("Grassmannian Chern number") {
  for (int p : {1, 2, 3}) {
    const auto est = chern_grassmann(p, {256, 256});
    CHECK(std::abs(est.value - p) <= 1e-6);
    CHECK(est.est_error <= 1e-6);
    CHECK(std::abs(est.value - p) <= 10 * est.est_error + 1e-12);
  }
  CHECK(chern_grassmann(0, {64, 64}).value == 0.0);
  CHECK(chern_grassmann(-2, {256, 256}).value == doctest::Approx(-2.0).epsilon(1e-6));

  // second-order trapezoid: halving h divides the raw error by about 4
  const double e64 = std::abs(chern_grassmann(1, {64, 64}).trapezoid - 1.0);
  const double e128 = std::abs(chern_grassmann(1, {128, 128}).trapezoid - 1.0);
  const double e256 = std::abs(chern_grassmann(1, {256, 256}).trapezoid - 1.0);
  CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e128 / e256 == doctest::Approx(4.0).epsilon(0.02));

  CHECK_THROWS_AS(chern_grassmann(1, {64, 66}), std::invalid_argument);
  CHECK_THROWS_AS(chern_grassmann(1, {4, 4}), std::invalid_argument);
}

TEST_CASE("boundary identity") {
  for (int p : {-1, 0, 1, 4}) CHECK(std::abs(chern_boundary_identity(p) - p) < 1e-15);
}
