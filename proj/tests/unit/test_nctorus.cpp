#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nctlab/errors.hpp"
#include "nctlab/nctorus.hpp"
#include "nctlab/random.hpp"

using namespace nct;

namespace {

TorusElement random_element(Rng& rng, double theta, int radius, Interpretation interp = Interpretation::algebra) {
  TorusElement x(theta, interp);
  for (int m = -radius; m <= radius; ++m)
    for (int n = -radius; n <= radius; ++n) x.set(m, n, cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  return x;
}

}  // namespace

TEST_CASE("torus_mul normal ordering") {
  const double theta = 0.29;
  const auto U = TorusElement::monomial(theta, 1, 0);
  const auto V = TorusElement::monomial(theta, 0, 1);
  const auto uv = torus_mul(U, V);
  CHECK(uv.coeff(1, 1) == cplx(1.0));
  CHECK(uv.coeffs().size() == 1);
  const auto vu = torus_mul(V, U);
  CHECK(std::abs(vu.coeff(1, 1) - unit_phase(-2 * kPi * theta)) < 1e-15);
  CHECK_THROWS_AS(torus_mul(U, TorusElement::monomial(0.3, 0, 1)), std::invalid_argument);
}

TEST_CASE("torus_mul associativity and theta = 0 degeneracy") {
  Rng rng(41);
  for (double theta : {0.0, 0.123, 0.5, 0.77}) {
    const auto a = random_element(rng, theta, 2), b = random_element(rng, theta, 2), c = random_element(rng, theta, 2);
    CHECK(max_coeff_diff(torus_mul(torus_mul(a, b), c), torus_mul(a, torus_mul(b, c))) < 1e-12);
  }
  const auto f = random_element(rng, 0.0, 2, Interpretation::function);
  const auto g = random_element(rng, 0.0, 2, Interpretation::function);
  const auto prod = torus_mul(f, g);
  CHECK(max_coeff_diff(prod, star_trig(f, g)) == 0.0);
  CHECK(max_coeff_diff(prod, torus_mul(g, f)) < 1e-14);
  CHECK(max_coeff_diff(quantize_T(f), f) == 0.0);
}

TEST_CASE("support cap raises instead of truncating") {
  TorusElement x(0.2, Interpretation::algebra, 4);
  CHECK_THROWS_AS(x.set(5, 0, 1.0), CapacityError);
  x.set(4, 4, 1.0);
  CHECK_THROWS_AS(torus_mul(x, x), CapacityError);
  CHECK_THROWS_AS(TorusElement(1.0), std::invalid_argument);
}

TEST_CASE("adjoint") {
  const double theta = 0.41;
  CHECK(max_coeff_diff(torus_adjoint(TorusElement::unit(theta)), TorusElement::unit(theta)) == 0.0);
  const auto U = TorusElement::monomial(theta, 1, 0);
  const auto Ustar = torus_adjoint(U);
  CHECK(std::abs(Ustar.coeff(-1, 0) - 1.0) < 1e-15);
  CHECK(max_coeff_diff(torus_mul(U, Ustar), TorusElement::unit(theta)) < 1e-15);

  Rng rng(43);
  const auto a = random_element(rng, theta, 2), b = random_element(rng, theta, 2);
  CHECK(max_coeff_diff(torus_adjoint(torus_adjoint(a)), a) < 1e-15);
  CHECK(max_coeff_diff(torus_adjoint(torus_mul(a, b)), torus_mul(torus_adjoint(b), torus_adjoint(a))) < 1e-12);
  // (UV)^* = V^* U^* = V^{-1} U^{-1} = e^{-2 pi i theta} U^{-1} V^{-1}
  const auto uvs = torus_adjoint(TorusElement::monomial(theta, 1, 1));
  CHECK(std::abs(uvs.coeff(-1, -1) - unit_phase(-2 * kPi * theta)) < 1e-15);
}

TEST_CASE("seminorm p_k") {
  CHECK(seminorm_pk(TorusElement::unit(0.1), 0) == 1.0);
  CHECK(seminorm_pk(TorusElement::unit(0.1), 7) == 1.0);
  CHECK(std::abs(seminorm_pk(TorusElement::monomial(0.1, 1, 1), 1) - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(seminorm_pk(TorusElement::monomial(0.1, 2, 0, 0.5), 2) - 0.5 * 5.0) < 1e-15);
  CHECK(seminorm_pk(TorusElement(0.1), 3) == 0.0);
  CHECK_THROWS_AS(seminorm_pk(TorusElement::unit(0.1), -1), std::invalid_argument);
}

TEST_CASE("star product and cocycle") {
  const double theta = 0.23;
  const auto u = TorusElement::monomial(theta, 1, 0, 1.0, Interpretation::function);
  const auto v = TorusElement::monomial(theta, 0, 1, 1.0, Interpretation::function);
  CHECK(std::abs(star_trig(u, v).coeff(1, 1) - unit_phase(kPi * theta)) < 1e-15);
  CHECK(std::abs(star_trig(v, u).coeff(1, 1) - unit_phase(-kPi * theta)) < 1e-15);

  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    int x[6];
    for (int& e : x) e = rng.integer(-6, 6);
    const double t = rng.uniform();
    const cplx lhs = cocycle_sigma(t, x[0], x[1], x[2], x[3]) * cocycle_sigma(t, x[0] + x[2], x[1] + x[3], x[4], x[5]);
    const cplx rhs = cocycle_sigma(t, x[2], x[3], x[4], x[5]) * cocycle_sigma(t, x[0], x[1], x[2] + x[4], x[3] + x[5]);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  const auto f = random_element(rng, theta, 2, Interpretation::function);
  const auto g = random_element(rng, theta, 2, Interpretation::function);
  const auto h = random_element(rng, theta, 1, Interpretation::function);
  CHECK(max_coeff_diff(star_trig(star_trig(f, g), h), star_trig(f, star_trig(g, h))) < 1e-12);
}

TEST_CASE("quantization intertwines the products") {
  const double theta = 0.31;
  CHECK(max_coeff_diff(quantize_T(TorusElement::unit(theta, Interpretation::function)), TorusElement::unit(theta)) ==
        0.0);
  const auto uv = quantize_T(TorusElement::monomial(theta, 1, 1, 1.0, Interpretation::function));
  CHECK(std::abs(uv.coeff(1, 1) - unit_phase(-kPi * theta)) < 1e-15);
  CHECK(uv.interpretation() == Interpretation::algebra);

  Rng rng(53);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_element(rng, theta, 2, Interpretation::function);
    const auto g = random_element(rng, theta, 2, Interpretation::function);
    CHECK(max_coeff_diff(quantize_T(star_trig(f, g)), torus_mul(quantize_T(f), quantize_T(g))) < 1e-12);
    CHECK(max_coeff_diff(dequantize_T(quantize_T(f)), f) < 1e-15);
  }
  // dequantize(UV): e^{+i pi theta} at (1,1), the product phase being 1
  const auto d = dequantize_T(torus_mul(TorusElement::monomial(theta, 1, 0), TorusElement::monomial(theta, 0, 1)));
  CHECK(std::abs(d.coeff(1, 1) - unit_phase(kPi * theta)) < 1e-15);
}

TEST_CASE("representation pi") {
  const double theta = 0.37;
  const auto U = TorusElement::monomial(theta, 1, 0);
  const auto V = TorusElement::monomial(theta, 0, 1);
  CHECK(weylsum_distance(rep_pi(U), WeylSum::single(1, 0)) == 0.0);
  CHECK(weylsum_distance(rep_pi(V), WeylSum::single(0, -theta)) == 0.0);
  CHECK(weylsum_distance(rep_pi(TorusElement::unit(theta)), WeylSum::identity()) == 0.0);
  CHECK(weylsum_distance(rep_pi(U) * rep_pi(V), unit_phase(2 * kPi * theta) * (rep_pi(V) * rep_pi(U))) < 1e-14);

  Rng rng(59);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_element(rng, theta, 2), y = random_element(rng, theta, 2);
    CHECK(weylsum_distance(rep_pi(torus_mul(x, y)), rep_pi(x) * rep_pi(y)) < 1e-12);
  }
}

TEST_CASE("center at rational theta") {
  const auto U = WeylSum::single(1, 0);
  CHECK(center_defect_rational(1, 2, U) <= 1e-12);
  CHECK(center_defect_rational(1, 2, WeylSum::single(0, -0.5)) <= 1e-12);
  CHECK(center_defect_rational(1, 3, U) <= 1e-12);
  CHECK(center_defect_rational(2, 5, WeylSum::single(0, -0.4)) <= 1e-12);
  CHECK(commutation_defect(WeylSum::single(0, 1), U) <= 1e-12);
  const double theta = 0.3 + 1e-3 * std::sqrt(2.0);
  const double defect = commutation_defect(WeylSum::single(2, 0), WeylSum::single(0, -theta));
  CHECK(std::abs(defect - 2 * std::abs(std::sin(2 * kPi * theta))) < 1e-12);
  CHECK(defect >= 0.1);
  CHECK_THROWS_AS(center_defect_rational(2, 4, U), std::invalid_argument);
  CHECK_THROWS_AS(center_defect_rational(1, 0, U), std::invalid_argument);
}

TEST_CASE("text serialization round trip") {
  Rng rng(61);
  const auto x = random_element(rng, 0.18, 2);
  const auto text = to_text(x, 3.5e-12);
  CHECK(text.rfind("theta ", 0) == 0);
  const auto parsed = parse_torus_text(text);
  CHECK(parsed.element.theta() == x.theta());
  CHECK(max_coeff_diff(parsed.element, x) == 0.0);
  REQUIRE(parsed.tail.has_value());
  CHECK(*parsed.tail == 3.5e-12);
  CHECK_FALSE(parse_torus_text(to_text(x)).tail.has_value());
  CHECK_THROWS_AS(parse_torus_text("0 0 1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_torus_text("theta 0.1\n0 0 x 0\n"), std::invalid_argument);
}
