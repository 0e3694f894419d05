#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>

#include "ediffract/errors.hpp"
#include "ediffract/spectra.hpp"

using namespace ediffract;
constexpr double pi = std::numbers::pi;

TEST_CASE("Rydberg constant") {
  SpectralContext precise(PhysicalConstants::precise());
  CHECK(std::abs(rydberg_constant(precise) / 109737.3 - 1) <= 1e-3);

  auto p = PhysicalConstants::paper();
  SpectralContext paper(p);
  double oracle = 9.1e-28 * std::pow(4.8e-10, 4) / (4 * pi * std::pow(1.1e-27, 3) * 3.0e10);
  CHECK(rydberg_constant(paper) == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(rydberg_constant(paper) == doctest::Approx(9.6e4).epsilon(0.02));

  SpectralContext z2(p, 2);
  CHECK(rydberg_constant(z2) == doctest::Approx(4 * rydberg_constant(paper)).epsilon(1e-15));
}

TEST_CASE("Balmer energies") {
  SpectralContext ctx(PhysicalConstants::paper());
  double E1 = balmer_energy(ctx, 1).E;
  CHECK(E1 < 0);
  for (int n = 1; n <= 10; ++n) CHECK(balmer_energy(ctx, n).E * n * n == doctest::Approx(E1).epsilon(1e-15));
  CHECK(E1 / balmer_energy(ctx, 2).E == doctest::Approx(4.0).epsilon(1e-15));
  double b = 2 * pi * ctx.consts.c * rydberg_constant(ctx);
  CHECK(b == doctest::Approx(2e16).epsilon(0.1));
  CHECK(balmer_energy(ctx, 3).omega == doctest::Approx(-b / 9).epsilon(1e-13));
  CHECK_THROWS_AS(balmer_energy(ctx, 0), DomainError);
}

TEST_CASE("Bohr lines") {
  SpectralContext ctx(PhysicalConstants::precise());
  CHECK(bohr_line(ctx, 4, 4) == 0.0);
  for (int n = 1; n < 6; ++n)
    for (int q = 1; q < 6; ++q) CHECK(bohr_line(ctx, n, q) == -bohr_line(ctx, q, n));
  CHECK(bohr_line(ctx, 1, 3) == doctest::Approx(bohr_line(ctx, 1, 2) + bohr_line(ctx, 2, 3)).epsilon(1e-14));
  double oracle = (balmer_energy(ctx, 3).E - balmer_energy(ctx, 1).E) / ctx.consts.hbar;
  CHECK(bohr_line(ctx, 1, 3) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("correspondence principle") {
  SpectralContext ctx(PhysicalConstants::precise());
  // direct evaluation in long double
  auto oracle = [](long double n, long double dn) {
    long double wq = 1 / (n * n) - 1 / ((n + dn) * (n + dn));
    long double wc = 2 / (n * n * n);
    return static_cast<double>(wq / (dn * wc));
  };
  auto r4 = correspondence_check(ctx, 10000, 1);
  CHECK(std::abs(r4.ratio - 1) <= 2e-4);
  CHECK(r4.ratio == doctest::Approx(oracle(1e4L, 1)).epsilon(1e-12));
  auto r2 = correspondence_check(ctx, 100, 1);
  CHECK(std::abs(r2.ratio - 1) == doctest::Approx(1.5e-2).epsilon(0.05));
  auto o = correspondence_check(ctx, 10000, 2);
  CHECK(std::abs(o.ratio - 1) <= 4e-4);
  CHECK(o.ratio == doctest::Approx(oracle(1e4L, 2)).epsilon(1e-12));

  double e3 = correspondence_check(ctx, 1000, 1).ratio - 1;
  double e4 = correspondence_check(ctx, 10000, 1).ratio - 1;
  double slope = std::log(std::abs(e4 / e3)) / std::log(10.0);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.05));
  double coeff = (e3 - e4) / (1e-3 - 1e-4);
  CHECK(coeff == doctest::Approx(-1.5).epsilon(0.05));
  CHECK_THROWS_AS(correspondence_check(ctx, 1, 1), DomainError);
}

TEST_CASE("classical Zeeman roots") {
  auto z0 = classical_zeeman(3.0, 0.0);
  CHECK(z0.omega_plus == 3.0);
  CHECK(z0.omega_minus == -3.0);
  CHECK(z0.triplet.size() == 1);

  auto z = classical_zeeman(1.0, 0.1);
  CHECK(z.omega_plus == doctest::Approx(-0.1 + std::sqrt(1.01)).epsilon(1e-14));
  CHECK(z.omega_minus == doctest::Approx(-0.1 - std::sqrt(1.01)).epsilon(1e-14));
  CHECK(z.omega_plus == doctest::Approx(0.904988).epsilon(1e-6));
  CHECK(z.omega_axial == 1.0);

  for (double w0 : {1.0, 2.5e15, 7e3})
    for (double wl : {0.1, -0.37, 1e-6, 3.0}) {
      double L = wl * w0;
      auto r = classical_zeeman(w0, L);
      CHECK(std::abs(r.omega_plus + r.omega_minus + 2 * L) <= 1e-15 * (w0 + std::abs(L)) * 4);
      CHECK(std::abs(r.omega_plus * r.omega_minus + w0 * w0) <= 1e-15 * w0 * w0 * 4);
      for (double w : {r.omega_plus, r.omega_minus})
        CHECK(std::abs(w * w + 2 * L * w - w0 * w0) <= 1e-14 * std::max(w0 * w0, w * w));
      REQUIRE(r.triplet.size() == 3);
      CHECK(r.triplet[0] == w0);
      CHECK(r.triplet[1] == w0 + L);
      CHECK(r.triplet[2] == w0 - L);
    }
  CHECK_THROWS_AS(classical_zeeman(0.0, 1.0), DomainError);

  SpectralContext ctx(PhysicalConstants::paper(), 1, 1e4);
  auto zc = classical_zeeman(1e16, ctx);
  CHECK(zc.triplet[1] == 1e16 + ctx.omega_L);
}

TEST_CASE("azimuthal selection factor") {
  constexpr int N = 64;
  for (int m = -3; m <= 3; ++m)
    for (int mp = -3; mp <= 3; ++mp)
      for (int k = -1; k <= 1; ++k) {
        std::complex<double> q = 0;
        for (int j = 0; j < N; ++j) q += std::polar(1.0, (m - mp + k) * 2 * pi * j / N);
        q /= double(N);
        auto a = azimuthal_selection_factor(m, mp, k);
        CHECK(std::abs(a - q) <= 1e-12);
        CHECK((a == 1.0 || a == 0.0));
      }
  CHECK(azimuthal_selection_factor(2, 2, 0) == 1.0);
  CHECK(azimuthal_selection_factor(2, 3, 1) == 1.0);
}

TEST_CASE("Zeeman lines") {
  SpectralContext ctx(PhysicalConstants::precise(), 1, 2e4);
  double w = bohr_line(ctx, 3, 2);
  auto a = zeeman_line(ctx, 3, 1, 2, 1);
  CHECK(a.allowed);
  CHECK(a.omega == w);
  CHECK(zeeman_line(ctx, 3, 0, 2, 1).omega == doctest::Approx(w - ctx.omega_L).epsilon(1e-15));
  CHECK(zeeman_line(ctx, 3, 0, 2, -1).omega == doctest::Approx(w + ctx.omega_L).epsilon(1e-15));
  auto r = zeeman_line(ctx, 3, -1, 2, 1);
  CHECK_FALSE(r.allowed);
  CHECK(r.factor == 0.0);
  CHECK_THROWS_AS(zeeman_line(ctx, 2, 2, 1, 0), DomainError);

  SpectralContext zero(PhysicalConstants::precise());
  for (int n = 1; n <= 4; ++n)
    for (int q = 1; q <= 4; ++q)
      for (int m = -(n - 1); m <= n - 1; ++m)
        for (int mp = std::max(-(q - 1), m - 1); mp <= std::min(q - 1, m + 1); ++mp)
          CHECK(zeeman_line(zero, n, m, q, mp).omega == bohr_line(zero, n, q));
}

TEST_CASE("Sommerfeld action") {
  for (auto pc : {PhysicalConstants::paper(), PhysicalConstants::precise()}) {
    SpectralContext ctx(pc, 2);
    for (int n = 1; n <= 20; ++n) {
      double E = balmer_energy(ctx, n).E;
      CHECK(sommerfeld_action(ctx, E) == doctest::Approx(2 * pi * pc.hbar * n).epsilon(1e-12));
      CHECK(quantized_energy(ctx, n) == doctest::Approx(E).epsilon(1e-12));
    }
    CHECK(sommerfeld_action(ctx, -2e-12) < sommerfeld_action(ctx, -1e-12));
    CHECK_THROWS_AS(sommerfeld_action(ctx, 0.0), DomainError);
  }
  SpectralContext paper(PhysicalConstants::paper());
  double S1 = sommerfeld_action(paper, balmer_energy(paper, 1).E);
  CHECK(S1 == doctest::Approx(2 * pi * 1.1e-27).epsilon(1e-12));
  CHECK(S1 == doctest::Approx(6.9e-27).epsilon(0.01));
}

TEST_CASE("spatial quantization and shells") {
  auto pc = PhysicalConstants::paper();
  auto s0 = spatial_quantization(0, pc);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0].L_B == 0.0);
  auto s2 = spatial_quantization(2, pc);
  REQUIRE(s2.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(s2[i].L_B / pc.hbar == doctest::Approx(i - 2));
    CHECK(std::abs(s2[i].L_B) <= s2[i].L_mag);
  }
  for (int n = 1; n <= 8; ++n) {
    std::size_t sum = 0;
    for (int l = 0; l < n; ++l) sum += spatial_quantization(l, pc).size();
    CHECK(sum == std::size_t(n * n));
  }
  int caps[] = {2, 8, 18, 32, 50};
  for (int n = 1; n <= 5; ++n) CHECK(shell_capacity(n) == caps[n - 1]);
  for (int n = 1; n <= 6; ++n) {
    auto st = enumerate_states(n);
    std::set<std::tuple<int, int, int, int>> uniq;
    for (auto q : st) {
      CHECK(is_valid(q));
      uniq.insert({q.n, q.l, q.m, q.s});
    }
    CHECK(uniq.size() == st.size());
  }
  auto n1 = enumerate_states(1);
  REQUIRE(n1.size() == 2);
  CHECK(n1[0].l == 0);
  CHECK(n1[0].m == 0);
  CHECK(n1[0].s != n1[1].s);
  CHECK_FALSE(is_valid({2, 2, 0, 1}));
  CHECK_FALSE(is_valid({2, 1, 0, 0}));
}

TEST_CASE("Pauli energies") {
  auto pc = PhysicalConstants::precise();
  SpectralContext none(pc);
  for (int m = -2; m <= 2; ++m)
    for (int s : {-1, 1}) CHECK(pauli_energy(none, 3, m, s) == balmer_energy(none, 3).E);

  SpectralContext ctx(pc, 1, 5e4);
  const int n = 4;
  std::map<int, double> by_sum;
  std::set<int> sums;
  for (auto q : enumerate_states(n)) {
    double E = pauli_energy(ctx, n, q.m, q.s);
    double oracle = balmer_energy(ctx, n).E - ctx.omega_L * pc.hbar * (q.m + q.s);
    CHECK(E == doctest::Approx(oracle).epsilon(1e-15));
    int key = q.m + q.s;
    sums.insert(key);
    if (by_sum.count(key))
      CHECK(E == by_sum[key]);
    else
      by_sum[key] = E;
  }
  CHECK(sums.size() == std::size_t(2 * n + 1));
  CHECK(*sums.begin() == -n);
  CHECK(*sums.rbegin() == n);
  CHECK(pauli_energy(ctx, 2, 1, -1) == pauli_energy(ctx, 2, -1, 1));
  CHECK(pauli_energy(ctx, 3, 0, 1) == pauli_energy(ctx, 3, 2, -1));
  CHECK(pauli_energy(ctx, 3, 1, -1) != pauli_energy(ctx, 3, 0, 1));
  CHECK_THROWS_AS(pauli_energy(ctx, 2, 2, 1), DomainError);
  CHECK_THROWS_AS(pauli_energy(ctx, 2, 0, 0), DomainError);
}
