#include <doctest.h>

#include <cmath>
#include <numbers>

#include "planarpot/potential.hpp"

using namespace planarpot;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("logarithmic capacity of the unit circle is 1") {
  auto eq = log_equilibrium(CompactSet::closed_disk(0, 1), 256);
  CHECK(eq.converged);
  CHECK(eq.capacity == doctest::Approx(1.0).epsilon(0.01));
  // equilibrium weights stay on the simplex
  double total = 0;
  for (double w : eq.measure.weights) {
    CHECK(w >= -1e-15);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("logarithmic capacity of a segment is length/4") {
  auto eq4 = log_equilibrium(CompactSet::segment(cxd(-2, 0), cxd(2, 0)), 512);
  CHECK(eq4.capacity == doctest::Approx(1.0).epsilon(0.02));
  auto eq2 = log_equilibrium(CompactSet::segment(cxd(-1, 0), cxd(1, 0)), 512);
  CHECK(eq2.capacity == doctest::Approx(0.5).epsilon(0.02));
  // dilation linearity
  CHECK(eq4.capacity / eq2.capacity == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("capacity is monotone under set inclusion") {
  auto small = log_equilibrium(CompactSet::segment(cxd(-0.5, 0), cxd(0.5, 0)), 256);
  auto large = log_equilibrium(CompactSet::segment(cxd(-1, 0), cxd(1, 0)), 256);
  CHECK(small.capacity <= large.capacity * 1.01);
}

TEST_CASE("segment equilibrium potential matches the arcsine measure off the set") {
  auto eq = log_equilibrium(CompactSet::segment(cxd(-1, 0), cxd(1, 0)), 256);
  // for the arcsine measure on [-1,1], p(z) = log(|z + sqrt(z^2-1)| / 2)
  auto oracle = [](cxd z) {
    cxd s = std::sqrt(z * z - cxd(1, 0));
    // pick the Joukowski branch that maps outside the unit circle
    return std::log(std::max(std::abs(z + s), std::abs(z - s)) / 2.0);
  };
  for (cxd z : {cxd(2, 0), cxd(0, 1), cxd(-1.5, 0.5)})
    CHECK(eq.potential(z) == doctest::Approx(oracle(z)).epsilon(0.01));
}

TEST_CASE("disk Green function: symmetry and boundary vanishing") {
  cxd z(0.4, 0.1), w(0.3, 0);
  CHECK(green_function_disk(1.0, z, w) == doctest::Approx(green_function_disk(1.0, w, z)));
  CHECK(green_function_disk(1.0, z, w) < 0);
  CHECK(std::abs(green_function_disk(1.0, cxd(0.999, 0), w)) < 0.01);
}

TEST_CASE("Green capacity of a concentric circle in the unit disk") {
  auto eq = green_equilibrium(CompactSet::closed_disk(0, 0.3), 0, 1.0, 256);
  CHECK(eq.converged);
  CHECK(eq.energy <= 0);
  CHECK(eq.capacity == doctest::Approx(0.3).epsilon(0.01));
  // relative bound: Green capacity vs log capacity over the gap distance
  auto log_eq = log_equilibrium(CompactSet::closed_disk(0, 0.3), 256);
  CHECK(eq.capacity <= log_eq.capacity / 0.7 + 1e-6);
  // potential lower bound holds on a grid
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      cxd p(0.2 * i, 0.2 * j);
      if (std::abs(p) >= 1.0) continue;
      // the discrete energy overshoots the continuum value by O(log n / n)
      CHECK(eq.potential(p) >= eq.energy - 5e-3);
    }
}

TEST_CASE("Green equilibrium rejects sets touching the outer circle") {
  CHECK_THROWS(green_equilibrium(CompactSet::closed_disk(0, 1.0), 0, 1.0, 64));
}

TEST_CASE("equilibrium cutoff is a [0,1] field with the analytic energy") {
  auto cut = equilibrium_cutoff(CompactSet::closed_disk(0, 0.3), 0, 1.0, 200, 64);
  for (double v : cut.chi.values) {
    CHECK(v >= -1e-6);
    CHECK(v <= 1 + 1e-6);
  }
  CHECK(cut.c == doctest::Approx(-2 * kPi / std::log(0.3)).epsilon(0.02));
  CHECK(cut.quadrature_energy == doctest::Approx(cut.c).epsilon(0.05));
}

TEST_CASE("Robin constant of the disk via inversion") {
  auto disk = Domain::disk(0, 1);
  CHECK(robin_constant(disk, 0, 256) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(robin_constant(disk, cxd(0.5, 0), 256) == doctest::Approx(4.0 / 3).epsilon(0.015));
  CHECK(robin_constant(Domain::disk(0, 2), 0, 256) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("capacity radius of the unit disk") {
  auto rr = capacity_radius(Domain::disk(0, 1), 0.3);
  CHECK(rr.radius >= 1.0);
  CHECK(rr.radius <= 1.6);
  CHECK(std::abs(rr.center) < 0.2);
}

TEST_CASE("capacity radius shrinks with alpha") {
  auto slit = Domain::subtract(Domain::disk(0, 1), CompactSet::segment(0, 0.75));
  auto r_small = capacity_radius(slit, 0.1);
  auto r_large = capacity_radius(slit, 0.5);
  CHECK(r_small.radius <= r_large.radius + 1e-9);
  CHECK(r_small.radius > 0);
}

TEST_CASE("excluded cloud sees zero-area slits") {
  auto slit = Domain::subtract(Domain::disk(0, 1), CompactSet::segment(0, 0.75));
  auto cloud = excluded_cloud(slit, cxd(0.3, 0.0), 0.2);
  CHECK(cloud.size() > 4);
  for (const auto& s : cloud) {
    CHECK(std::abs(s.point - cxd(0.3, 0.0)) <= 0.2 + 1e-9);
    CHECK(!slit.contains(s.point));
  }
  // a disk fully inside the domain excludes nothing
  CHECK(excluded_cloud(Domain::disk(0, 1), 0, 0.5).empty());
  CHECK(excluded_set_capacity(Domain::disk(0, 1), 0, 0.5) == 0.0);
}
