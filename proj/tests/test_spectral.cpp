#include <doctest.h>

#include <numbers>

#include "planarpot/spectral.hpp"

using namespace planarpot;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("laplacian of the square eigenfunction is nearly diagonal") {
  auto grid = rasterize(Domain::rectangle(0, 1, 0, 1), 64);
  auto f = make_scalar_field(grid, [](cxd z) {
    return std::sin(kPi * z.real()) * std::sin(kPi * z.imag());
  });
  double q = rayleigh_quotient(f);
  CHECK(q == doctest::Approx(2 * kPi * kPi).epsilon(0.01));
}

TEST_CASE("smallest Dirichlet eigenvalue of the unit disk") {
  auto res = dirichlet_lambda1(rasterize(Domain::disk(0, 1), 64));
  // j_{0,1}^2 = 5.7832 (squared first Bessel zero)
  CHECK(res.value == doctest::Approx(5.7832).epsilon(0.01));
  CHECK(res.residual < 1e-6);
  for (double v : res.field.values) CHECK(v > -1e-8); // ground state has a sign
}

TEST_CASE("smallest Dirichlet eigenvalue of the unit square") {
  auto res = dirichlet_lambda1(rasterize(Domain::rectangle(0, 1, 0, 1), 64));
  CHECK(res.value == doctest::Approx(2 * kPi * kPi).epsilon(0.005));
}

TEST_CASE("eigenvalue scales like 1/r^2 under dilation") {
  auto unit = dirichlet_lambda1(rasterize(Domain::disk(0, 1), 64));
  auto twice = dirichlet_lambda1(rasterize(Domain::disk(0, 2), 64));
  CHECK(twice.value == doctest::Approx(unit.value / 4).epsilon(0.01));
}

TEST_CASE("rayleigh quotient of any admissible field dominates lambda1") {
  auto grid = rasterize(Domain::disk(0, 1), 48);
  auto l1 = dirichlet_lambda1(grid);
  auto f = make_scalar_field(grid, [](cxd z) { return 1.0 - std::norm(z); });
  CHECK(rayleigh_quotient(f) >= l1.value - 1e-9);
}

TEST_CASE("Hardy constant is near 1/2 on convex domains") {
  CHECK(hardy_constant(rasterize(Domain::disk(0, 1), 96)).h ==
        doctest::Approx(0.5).epsilon(0.05));
  CHECK(hardy_constant(rasterize(Domain::rectangle(0, 1, 0, 1), 96)).h ==
        doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("Hardy pencil eigenpair has a small residual") {
  auto hr = hardy_constant(rasterize(Domain::disk(0, 1), 64));
  CHECK(hr.eigen.residual < 1e-6);
  CHECK(hr.h == doctest::Approx(std::sqrt(hr.eigen.value)));
}

TEST_CASE("ms test function certifies lambda1 from above on the slit disk") {
  auto slit = Domain::subtract(Domain::disk(0, 1), CompactSet::segment(0, 0.75));
  auto grid = rasterize(slit, 64);
  auto rr = capacity_radius(slit, 0.3);
  auto ms = ms_test_function(grid, rr.center, 0.3, 0.75 * rr.radius);
  CHECK(!ms.excluded_empty);
  CHECK(ms.r1 < ms.r2);
  CHECK(ms.r2 < 0.75 * rr.radius);
  double l1 = dirichlet_lambda1(grid).value;
  CHECK(ms.quotient >= l1 - 1e-6);
  CHECK(std::isfinite(ms.quotient));
}

TEST_CASE("ms test function on an unobstructed disk reduces to the radial cutoff") {
  auto grid = rasterize(Domain::disk(0, 1), 48);
  auto ms = ms_test_function(grid, 0, 0.3, 0.5);
  CHECK(ms.excluded_empty);
  CHECK(ms.quotient >= dirichlet_lambda1(grid).value - 1e-6);
}

TEST_CASE("ms test function rejects degenerate cutoff bands") {
  auto grid = rasterize(Domain::disk(0, 1), 32);
  CHECK_THROWS(ms_test_function(grid, 0, 2.0, 0.5)); // r2 > r
}
