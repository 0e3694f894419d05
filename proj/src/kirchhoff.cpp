#include "ediffract/kirchhoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ediffract/bessel.hpp"
#include "ediffract/errors.hpp"
#include "ediffract/parallel.hpp"

namespace ediffract {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double sin_ratio(double a, double w) {
  // sin(a w) / a, limit w
  if (std::abs(a * w) < 1e-8) return w * (1.0 - (a * w) * (a * w) / 6.0);
  return std::sin(a * w) / a;
}

cplx far_prefactor(const IncidentBeam& beam, double cos_chi, double range) {
  double k = beam.k;
  return -(I * k * beam.a_in) * (1.0 + cos_chi) * std::exp(I * (k * range)) /
         (16.0 * pi * pi * range);
}

}  // namespace

cplx green0(const Vec3& x, const Vec3& y, double k) {
  double s = norm(x - y);
  if (s == 0.0) throw SingularityError("green0 evaluated at coincident points");
  return -std::exp(I * (k * s)) / (4.0 * pi * s);
}

std::array<cplx, 3> green0_grad_y(const Vec3& x, const Vec3& y, double k) {
  Vec3 r = y - x;
  double s = norm(r);
  if (s == 0.0) throw SingularityError("green0 gradient at coincident points");
  cplx dGds = -std::exp(I * (k * s)) * (I * (k * s) - 1.0) / (4.0 * pi * s * s);
  cplx f = dGds / s;
  return {f * r.x, f * r.y, f * r.z};
}

cplx green0_normal_derivative(const Vec3& x, Vec2 y, double k) {
  if (!(x.z > 0.0)) throw DomainError("normal derivative needs x3 > 0");
  return green0_grad_y(x, {y.x, y.y, 0.0}, k)[2];
}

double radiation_residual(const std::function<cplx(const Vec3&)>& kernel, double k, double rho,
                          int directions) {
  // Fibonacci sphere, 5-point radial derivative
  const double golden = pi * (3.0 - std::sqrt(5.0));
  double h = 0.01 * std::min(rho, k > 0.0 ? 1.0 / k : rho);
  double worst = 0.0;
  for (int i = 0; i < directions; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / directions;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec3 u{r * std::cos(golden * i), r * std::sin(golden * i), z};
    auto f = [&](double t) { return kernel((rho + t) * u); };
    cplx d = (f(-2 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2 * h)) / (12.0 * h);
    worst = std::max(worst, std::abs(rho * (d - I * k * f(0.0))));
  }
  return worst;
}

AmplitudeField kirchhoff_amplitude(const Aperture& ap, const IncidentBeam& beam,
                                   const std::vector<Vec3>& points, const QuadratureRule& rule,
                                   unsigned threads) {
  (void)ap;
  const double k = beam.k, lam = beam.wavelength();
  for (const auto& p : points)
    if (!(p.z > 0.0)) throw DomainError("observation points need x3 > 0");

  AmplitudeField out;
  out.points = points;
  out.values.assign(points.size(), cplx{});
  out.intensity.assign(points.size(), 0.0);
  std::vector<char> near(points.size(), 0);
  const cplx pre = -(I * k * beam.a_in) / (16.0 * pi * pi);

  parallel_for(
      points.size(),
      [&](std::size_t i) {
        const Vec3& x = points[i];
        cplx sum{};
        double smin = 1e300;
        for (std::size_t j = 0; j < rule.size(); ++j) {
          double dx = x.x - rule.nodes[j].x, dy = x.y - rule.nodes[j].y;
          double s = std::sqrt(dx * dx + dy * dy + x.z * x.z);
          smin = std::min(smin, s);
          double ks = k * s;
          sum += rule.weights[j] * (1.0 + x.z / s) / s * cplx{std::cos(ks), std::sin(ks)};
        }
        out.values[i] = pre * sum;
        out.intensity[i] = std::norm(out.values[i]);
        near[i] = smin < 2.0 * lam;
      },
      threads);
  out.near_field.assign(near.begin(), near.end());
  return out;
}

ConvergedAmplitude kirchhoff_converged(const Aperture& ap, const IncidentBeam& beam,
                                       const std::vector<Vec3>& points, double start_spw,
                                       double tol, int max_doublings) {
  ConvergedAmplitude res;
  double spw = start_spw;
  AmplitudeField prev = kirchhoff_amplitude(ap, beam, points, quadrature(ap, beam.k, spw));
  for (int it = 0; it < max_doublings; ++it) {
    double next = 2.0 * spw;
    AmplitudeField cur = kirchhoff_amplitude(ap, beam, points, quadrature(ap, beam.k, next));
    double diff = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      diff = std::max(diff, std::abs(cur.values[i] - prev.values[i]));
      peak = std::max(peak, std::abs(cur.values[i]));
    }
    res.last_change = peak > 0.0 ? diff / peak : 0.0;
    prev = std::move(cur);
    spw = next;
    if (res.last_change < tol) {
      res.converged = true;
      break;
    }
  }
  res.field = std::move(prev);
  res.samples_per_wavelength = spw;
  return res;
}

cplx aperture_transform(const Aperture& ap, double k, double xi1, double xi2) {
  return std::visit(
      overloaded{[&](const RectSlit& r) {
                   cplx shift = std::exp(-I * (k * (xi1 * r.center.x + xi2 * r.center.y)));
                   return shift * 4.0 * sin_ratio(k * xi1, r.half_width) *
                          sin_ratio(k * xi2, r.half_height);
                 },
                 [&](const Disk& d) {
                   cplx shift = std::exp(-I * (k * (xi1 * d.center.x + xi2 * d.center.y)));
                   double z = k * d.radius * std::hypot(xi1, xi2);
                   return shift * 2.0 * pi * d.radius * d.radius * bessel_j1_ratio(z);
                 },
                 [&](const std::vector<Aperture>& v) {
                   cplx s{};
                   for (const auto& a : v) s += aperture_transform(a, k, xi1, xi2);
                   return s;
                 }},
      ap.shape);
}

cplx fraunhofer_amplitude(const Aperture& ap, const IncidentBeam& beam, const Vec3& xi,
                          double range) {
  if (!(xi.z > 0.0)) throw DomainError("direction needs xi3 > 0");
  if (!(range > 0.0)) throw DomainError("range must be positive");
  Vec3 u = normalized(xi);
  return far_prefactor(beam, u.z, range) * aperture_transform(ap, beam.k, u.x, u.y);
}

cplx airy_amplitude(double R, const IncidentBeam& beam, double chi_bar, double range) {
  if (!(R > 0.0)) throw DomainError("disk radius must be positive");
  if (!(chi_bar >= 0.0 && chi_bar < 0.5 * pi)) throw DomainError("chi_bar outside [0, pi/2)");
  double z = beam.k * R * std::sin(chi_bar);
  return far_prefactor(beam, std::cos(chi_bar), range) * 2.0 * pi * R * R * bessel_j1_ratio(z);
}

TwoSlitSetup TwoSlitSetup::canonical(double d, double D) {
  if (!(d > 0.0)) throw DomainError("slit half-separation must be positive");
  if (!(D > 0.0)) throw DomainError("screen distance must be positive");
  return {{0.0, d, 0.0}, {0.0, -d, 0.0}, D};
}

cplx two_slit_amplitude(const TwoSlitSetup& setup, double k, const Vec3& x) {
  if (!(x.z > 0.0)) throw DomainError("observation point needs x3 > 0");
  cplx a{};
  for (const Vec3& q : {setup.q1, setup.q2}) {
    double s = norm(x - q);
    if (s == 0.0) throw SingularityError("observation point coincides with a slit centre");
    a += std::exp(I * (k * s)) / s * (1.0 + (x.z - q.z) / s);
  }
  return a;
}

double two_slit_small_angle_modulus(const TwoSlitSetup& setup, double k, const Vec3& x,
                                    double delta_theta) {
  double s1 = norm(x - setup.q1), s2 = norm(x - setup.q2);
  return 2.0 / setup.D * std::abs(std::exp(I * (k * (s1 - s2) - delta_theta)) + 1.0);
}

std::vector<FringeRoot> fringe_maxima(const TwoSlitSetup& setup, double lambda, int n_min,
                                      int n_max, double delta_len) {
  const double d = setup.half_separation(), D = setup.D;
  if (!(D > 0.0) || !(d > 0.0) || !(lambda > 0.0))
    throw DomainError("fringe_maxima needs D, d, lambda > 0");
  // path difference |x - q2| - |x - q1| written without cancellation; increasing in x2
  auto g = [&](double x) {
    double s1 = std::sqrt((x - d) * (x - d) + D * D), s2 = std::sqrt((x + d) * (x + d) + D * D);
    return 4.0 * x * d / (s1 + s2);
  };
  std::vector<FringeRoot> out;
  for (int n = n_min; n <= n_max; ++n) {
    FringeRoot r;
    r.n = n;
    double t = n * lambda - delta_len;
    r.x2_small_angle = t * D / (2.0 * d);
    if (std::abs(t) >= 2.0 * d) {
      r.in_range = false;
      r.x2_exact = std::nan("");
      out.push_back(r);
      continue;
    }
    r.in_range = true;
    double target = std::abs(t);
    double lo = 0.0, hi = std::max(std::abs(r.x2_small_angle), d);
    while (g(hi) < target) hi *= 2.0;
    for (int it = 0; it < 400; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (g(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    double x = std::abs(g(lo) - target) <= std::abs(g(hi) - target) ? lo : hi;
    if (std::abs(g(x) - target) > 1e-12 * D)
      throw AccuracyError("fringe bisection did not reach tolerance for n = " + std::to_string(n));
    r.x2_exact = t < 0.0 ? -x : x;
    out.push_back(r);
  }
  return out;
}

}  // namespace ediffract
