#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ediffract/constants.hpp"
#include "ediffract/errors.hpp"

using namespace ediffract;

TEST_CASE("constant sets") {
  auto p = PhysicalConstants::paper();
  CHECK(p.e == -4.8e-10);
  CHECK(p.m == 9.1e-28);
  CHECK(p.hbar == 1.1e-27);
  CHECK(p.c == 3.0e10);
  for (auto pc : {PhysicalConstants::paper(), PhysicalConstants::precise()}) {
    CHECK(pc.e < 0);
    CHECK(pc.m > 0);
    CHECK(pc.hbar > 0);
    CHECK(pc.c > 0);
  }
  CHECK_THROWS_AS(PhysicalConstants::by_name("si"), ConfigError);
}

TEST_CASE("de Broglie wavelength") {
  auto pc = PhysicalConstants::precise();
  const double h = 2 * std::numbers::pi * pc.hbar;
  CHECK(de_broglie_wavelength(h, pc) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(de_broglie_wavelength(2e-19, pc) == doctest::Approx(0.5 * de_broglie_wavelength(1e-19, pc)).epsilon(1e-15));
  double p50 = h / 50e-10;
  CHECK(de_broglie_wavelength(p50, pc) == doctest::Approx(50e-10).epsilon(1e-14));
  for (double p : {1e-22, 3.7e-19, 5e-15}) CHECK(de_broglie_wavelength(p, pc) * p == doctest::Approx(h).epsilon(1e-15));
  CHECK_THROWS_AS(de_broglie_wavelength(0.0, pc), DomainError);
  CHECK_THROWS_AS(de_broglie_wavelength(-1.0, pc), DomainError);
}

TEST_CASE("dispersion relations") {
  auto pc = PhysicalConstants::precise();
  CHECK(dispersion(0.0, Dispersion::nonrelativistic, pc) == 0.0);
  double rest = pc.m * pc.c * pc.c / pc.hbar;
  CHECK(dispersion(0.0, Dispersion::relativistic, pc) == doctest::Approx(rest).epsilon(1e-15));

  // hbar k / mc = 1e-3: the relative gap to the Newtonian value is about x^2/4
  double x = 1e-3, k = x * pc.m * pc.c / pc.hbar;
  double nr = dispersion(k, Dispersion::nonrelativistic, pc);
  double rel = dispersion(k, Dispersion::relativistic, pc) - rest;
  double err = std::abs(rel - nr) / nr;
  CHECK(err <= x * x / 4 * 1.01);
  CHECK(err >= x * x / 4 * 0.99);

  double prev_nr = -1, prev_r = -1;
  for (int i = 0; i <= 50; ++i) {
    double kk = i * 1e9;
    double a = dispersion(kk, Dispersion::nonrelativistic, pc), b = dispersion(kk, Dispersion::relativistic, pc);
    CHECK(a > prev_nr);
    CHECK(b >= prev_r);
    CHECK(b >= rest * (1 - 1e-15));
    prev_nr = a;
    prev_r = b;
  }
  CHECK_THROWS_AS(dispersion(-1.0, Dispersion::nonrelativistic, pc), DomainError);
}

TEST_CASE("photo energy") {
  auto pc = PhysicalConstants::paper();
  double w = 3e15;
  CHECK(photo_energy(w, 0.0, pc) == pc.hbar * w);
  CHECK(photo_energy(w, pc.hbar * w, pc) == 0.0);
  double A = 2e-12;
  CHECK(photo_energy(2 * A / pc.hbar, A, pc) == doctest::Approx(A).epsilon(1e-15));
  CHECK(photo_energy(w, 1.0, pc) < 0.0);
  CHECK_THROWS_AS(photo_energy(0.0, 0.0, pc), DomainError);
  CHECK_THROWS_AS(photo_energy(w, -1.0, pc), DomainError);
}

TEST_CASE("Larmor frequency") {
  auto pc = PhysicalConstants::paper();
  CHECK(larmor_frequency(0.0, pc) == 0.0);
  CHECK(larmor_frequency(-1e4, pc) == -larmor_frequency(1e4, pc));
  double oracle = (-4.8e-10 * 1e4) / (2 * 9.1e-28 * 3.0e10);
  CHECK(larmor_frequency(1e4, pc) == doctest::Approx(oracle).epsilon(1e-15));
  CHECK(larmor_frequency(1e4, pc) == doctest::Approx(-8.791208791e10).epsilon(1e-9));
}

TEST_CASE("incident beam") {
  auto pc = PhysicalConstants::precise();
  auto b = IncidentBeam::from_wavelength(50e-10, {1, 0}, pc);
  CHECK(b.wavelength() == doctest::Approx(50e-10).epsilon(1e-15));
  CHECK(b.omega_prime == pc.hbar * b.k * b.k / (2 * pc.m));
  CHECK_THROWS_AS(IncidentBeam::from_k(0.0, {1, 0}, pc), DomainError);
}
