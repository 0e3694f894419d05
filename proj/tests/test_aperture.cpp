#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "ediffract/aperture.hpp"
#include "ediffract/errors.hpp"

using namespace ediffract;

namespace {
double total(const QuadratureRule& q) {
  double s = 0;
  for (double w : q.weights) s += w;
  return s;
}
}  // namespace

TEST_CASE("membership") {
  auto d = Aperture::disk({0, 0}, 1.0);
  CHECK(contains(d, {0, 0}));
  CHECK_FALSE(contains(d, {2, 0}));
  CHECK_FALSE(contains(d, {1, 0}));  // boundary is not part of the open set

  auto u = Aperture::union_of({Aperture::rect({0, 1}, 0.5, 0.2), Aperture::rect({0, -1}, 0.5, 0.2)});
  CHECK(contains(u, {0.1, 1.1}));
  CHECK(contains(u, {-0.4, -0.9}));
  CHECK_FALSE(contains(u, {0.0, 0.0}));  // gap: |y2| < 0.8
  CHECK_FALSE(contains(u, {0.0, 0.79}));
  CHECK_FALSE(contains(u, {0.5, 1.0}));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(Aperture::rect({0, 0}, 0.0, 1.0)), ConfigError);
  CHECK_THROWS_AS(validate(Aperture::disk({0, 0}, -1.0)), ConfigError);
  auto overlap = Aperture::union_of({Aperture::disk({0, 0}, 1.0), Aperture::rect({0.9, 0}, 0.5, 0.5)});
  CHECK_THROWS_AS(validate(overlap), ConfigError);
  CHECK_NOTHROW(validate(Aperture::union_of({})));
  CHECK_THROWS_AS(quadrature(Aperture::disk({0, 0}, 1), 1.0, 3.0), ConfigError);
}

TEST_CASE("rectangle quadrature") {
  auto r = Aperture::rect({0.3, -0.2}, 1.7, 0.45);
  double A = area(r);
  CHECK(A == doctest::Approx(4 * 1.7 * 0.45).epsilon(1e-15));
  for (double spw : {4.0, 10.0, 17.0}) {
    auto q = quadrature(r, 2 * std::numbers::pi, spw);
    CHECK(std::abs(total(q) - A) <= 1e-6 * A);
    double hmax = 1.0 / spw;
    // the nodes sit at cell centres with spacing at most lambda / spw
    std::set<double> xs, ys;
    for (auto p : q.nodes) {
      xs.insert(p.x);
      ys.insert(p.y);
      CHECK(contains(r, p));
    }
    CHECK(2 * 1.7 / xs.size() <= hmax * (1 + 1e-12));
    CHECK(2 * 0.45 / ys.size() <= hmax * (1 + 1e-12));
  }
  for (double spw : {4.0, 5.0, 9.0, 12.5}) {
    auto a = quadrature(r, 2 * std::numbers::pi, spw), b = quadrature(r, 2 * std::numbers::pi, 2 * spw);
    CHECK(b.size() >= 4 * a.size());
  }
}

TEST_CASE("disk quadrature") {
  const double R = 1.0, lam = R / 10;
  auto d = Aperture::disk({0.2, -0.1}, R);
  auto q = quadrature(d, 2 * std::numbers::pi / lam, 16.0);
  double exact = std::numbers::pi * R * R;
  CHECK(std::abs(total(q) - exact) / exact <= 1e-3);
  CHECK(std::abs(total(q) - exact) / exact <= 1e-10);  // clipped cell areas are exact
  for (auto p : q.nodes) CHECK(contains(d, p));
  CHECK(q.nodes.size() == q.weights.size());
}

TEST_CASE("node symmetry under y2 -> -y2") {
  auto u = Aperture::union_of({Aperture::rect({0, 0.3}, 0.2, 0.05), Aperture::rect({0, -0.3}, 0.2, 0.05)});
  auto d = Aperture::disk({0, 0}, 0.7);
  for (const auto& ap : {u, d}) {
    auto q = quadrature(ap, 2 * std::numbers::pi / 0.05, 10.0);
    std::set<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < q.size(); ++i) pts.insert({q.nodes[i].x, q.nodes[i].y});
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(pts.count({q.nodes[i].x, -q.nodes[i].y}) == 1);
  }
}

TEST_CASE("empty aperture") {
  auto q = quadrature(Aperture::union_of({}), 1.0, 10.0);
  CHECK(q.size() == 0);
  CHECK(area(Aperture::union_of({})) == 0.0);
}

TEST_CASE("Fresnel factor") {
  auto f = fresnel_factor({3, 0, 4}, {0, 0});
  CHECK(f.s == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(f.cos_chi == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(f.factor == doctest::Approx(1.8).epsilon(1e-15));

  auto on = fresnel_factor({0.3, -0.2, 2.0}, {0.3, -0.2});
  CHECK(on.cos_chi == 1.0);
  CHECK(on.factor == 2.0);

  auto graze = fresnel_factor({1.0, 0, 1e-9}, {0, 0});
  CHECK(graze.factor == doctest::Approx(1.0).epsilon(1e-8));

  auto a = fresnel_factor({1.1, 2.3, 0.7}, {0.4, -0.5});
  auto b = fresnel_factor({1.1 + 5.0, 2.3 - 3.0, 0.7}, {0.4 + 5.0, -0.5 - 3.0});
  CHECK(a.s == doctest::Approx(b.s).epsilon(1e-14));
  CHECK(a.factor == doctest::Approx(b.factor).epsilon(1e-14));

  CHECK_THROWS_AS(fresnel_factor({0, 0, 0}, {0, 0}), DomainError);
  CHECK_THROWS_AS(fresnel_factor({0, 0, -1}, {0, 0}), DomainError);
}
