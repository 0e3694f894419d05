#include "ediffract/born.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ediffract/errors.hpp"

namespace ediffract {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

// average of green0 over a ball of radius R around its centre
cplx green0_ball_average(double k, double R) {
  cplx integral;  // int_0^R exp(ikr) r dr
  double kR = k * R;
  if (kR < 1e-3) {
    integral = R * R / 2.0 + I * k * R * R * R / 3.0 - k * k * R * R * R * R / 8.0;
  } else {
    integral = std::exp(I * kR) * (R / (I * k) + 1.0 / (k * k)) - 1.0 / (k * k);
  }
  return -3.0 / (4.0 * pi * R * R * R) * integral;
}

// b(z).grad_z G0(z, w) + b0(z) G0(z, w)
cplx apply_b(const Vec3& bz, double b0z, const Vec3& z, const Vec3& w, double k) {
  auto g = green0_grad_y(w, z, k);
  cplx v = bz.x * g[0] + bz.y * g[1] + bz.z * g[2];
  if (b0z != 0.0) v += b0z * green0(z, w, k);
  return v;
}

}  // namespace

std::vector<cplx> born_series(const GaugeSplit& split, const PhysicalConstants& pc, double k,
                              const Vec3& x, const Vec3& y, int order, const BornOptions& opt) {
  if (order < 1) throw DomainError("Born term order must be >= 1");
  if (order > opt.max_order)
    throw UnsupportedOrderError("Born order " + std::to_string(order) +
                                " exceeds the configured maximum " + std::to_string(opt.max_order));
  if (split.region().contains(x) || split.region().contains(y))
    throw DomainError("Born terms need x and y outside the inflated tube box");
  Vec3 h = split.grid_spacing();
  if (k * std::max({h.x, h.y, h.z}) > 1.0)
    throw AccuracyError("Born grid spacing too coarse for k = " + std::to_string(k));

  const double vol = split.cell_volume();
  const double kap = coupling(pc);
  std::vector<Vec3> z;
  std::vector<Vec3> b;
  std::vector<double> b0;
  for (std::size_t i = 0; i < split.nodes().size(); ++i) {
    const Vec3& bi = split.b()[i];
    if (bi == Vec3{}) continue;
    z.push_back(split.nodes()[i]);
    b.push_back(bi);
    b0.push_back(opt.include_quadratic ? kap * kap * dot(bi, bi) : 0.0);
  }
  const std::size_t S = z.size();
  const cplx gdiag = green0_ball_average(k, std::cbrt(3.0 * vol / (4.0 * pi)));

  std::vector<cplx> v(S), next(S);
  for (std::size_t i = 0; i < S; ++i) v[i] = apply_b(b[i], b0[i], z[i], y, k);

  std::vector<cplx> out;
  for (int n = 1; n <= order; ++n) {
    if (n > 1) {
      for (std::size_t i = 0; i < S; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < S; ++j) {
          if (j == i) continue;  // principal value over the symmetric cell for the gradient part
          acc += apply_b(b[i], b0[i], z[i], z[j], k) * v[j];
        }
        acc += b0[i] * gdiag * v[i];
        next[i] = vol * acc;
      }
      v.swap(next);
    }
    cplx r{};
    for (std::size_t i = 0; i < S; ++i) r += green0(x, z[i], k) * v[i];
    out.push_back((n % 2 ? -1.0 : 1.0) * vol * r);
  }
  return out;
}

cplx born_term(const GaugeSplit& split, const PhysicalConstants& pc, double k, const Vec3& x,
               const Vec3& y, int order, const BornOptions& opt) {
  return born_series(split, pc, k, x, y, order, opt).back();
}

MagneticGreen magnetic_green(const GaugeSplit& split, const PhysicalConstants& pc, double k,
                             const Vec3& x, const Vec3& y, int order, const BornOptions& opt) {
  if (order < 0) throw DomainError("order must be >= 0");
  MagneticGreen g;
  g.terms.push_back(green0(x, y, k));
  if (order >= 1) {
    auto r = born_series(split, pc, k, x, y, order, opt);
    g.terms.insert(g.terms.end(), r.begin(), r.end());
  }
  cplx sum{};
  for (const auto& t : g.terms) sum += t;
  double kap = coupling(pc);
  g.value = std::exp(I * (kap * split.phase(x))) * sum * std::exp(-I * (kap * split.phase(y)));
  if (order >= 2) {
    double r1 = std::abs(g.terms[1]), r2 = std::abs(g.terms[2]);
    g.term_ratio = r1 > 0.0 ? r2 / r1 : 0.0;
    g.divergence_warning = g.term_ratio >= 1.0;
  }
  return g;
}

ABPhase ABPhase::from_delta_theta(double delta_theta, double k) {
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  return {delta_theta, delta_theta / k};
}

ABPhase ab_phase(const TwoSlitSetup& setup, double k, const ScalarField& phi, double coupling) {
  return ABPhase::from_delta_theta(coupling * (phi(setup.q1) - phi(setup.q2)), k);
}

ScalarField imposed_phase(const TwoSlitSetup& setup, double delta_theta, double coupling) {
  Vec3 q1 = setup.q1, u = setup.q1 - setup.q2;
  double L2 = dot(u, u);
  double scale = delta_theta / coupling;
  return [=](const Vec3& x) { return scale * (0.5 + dot(x - q1, u) / L2); };
}

cplx ab_two_slit_amplitude(const TwoSlitSetup& setup, double k, const ScalarField& phi,
                           double coupling, const Vec3& x) {
  if (!(x.z > 0.0)) throw DomainError("observation point needs x3 > 0");
  double px = phi(x);
  cplx a{};
  for (const Vec3& q : {setup.q1, setup.q2}) {
    double s = norm(x - q);
    if (s == 0.0) throw SingularityError("observation point coincides with a slit centre");
    a += std::exp(I * (coupling * (px - phi(q)) + k * s)) / s * (1.0 + (x.z - q.z) / s);
  }
  return a;
}

double ab_shift(const ABPhase& phase, const TwoSlitSetup& setup) {
  return phase.delta_len * setup.D / (2.0 * setup.half_separation());
}

}  // namespace ediffract
