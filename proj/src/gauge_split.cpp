#include "ediffract/gauge_split.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ediffract/errors.hpp"
#include "ediffract/gauss.hpp"

namespace ediffract {

namespace {

constexpr double pi = std::numbers::pi;

// 1 inside [lo, hi], cosine ramp to 0 over `margin` outside
double ramp(double t, double lo, double hi, double margin, double* deriv) {
  double d = t < lo ? lo - t : (t > hi ? t - hi : 0.0);
  double sgn = t < lo ? -1.0 : 1.0;
  if (d >= margin) {
    if (deriv) *deriv = 0.0;
    return 0.0;
  }
  if (deriv) *deriv = d == 0.0 ? 0.0 : -0.5 * pi / margin * std::sin(pi * d / margin) * sgn;
  return 0.5 * (1.0 + std::cos(pi * d / margin));
}

// 3-point Gauss rule on a single lattice edge
double edge_integral(const VectorField& A, const Vec3& p, const Vec3& q) {
  static const GaussRule g = gauss_legendre(3);
  Vec3 d = q - p;
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * dot(A(p + (0.5 * (1.0 + g.x[i])) * d), d);
  return 0.5 * s;
}

}  // namespace

double GaugeSplit::ball_radius() const { return 0.5 * norm(outer_.hi - outer_.lo); }

double GaugeSplit::cutoff(const Vec3& x) const {
  double c = 1.0;
  for (int a = 0; a < 3; ++a) c *= ramp(x[a], inner_.lo[a], inner_.hi[a], margin_, nullptr);
  return c;
}

bool GaugeSplit::below_footprint(const Vec3& x) const {
  return x.z < inner_.lo.z && x.x >= inner_.lo.x && x.x <= inner_.hi.x && x.y >= inner_.lo.y &&
         x.y <= inner_.hi.y;
}

double GaugeSplit::phi_inner(const Vec3& x) const {
  return line_integral(A_, {base_, {x.x, x.y, z_top_}, x}, piece_);
}

double GaugeSplit::phi_line(const Vec3& x) const {
  if (inner_.contains(x)) throw PathError("phi_line requested inside the tube box");
  if (below_footprint(x))
    return line_integral(A_, {base_, {x_out_, x.y, z_top_}, {x_out_, x.y, x.z}, x}, piece_);
  return line_integral(A_, {base_, {x.x, x.y, z_top_}, x}, piece_);
}

double GaugeSplit::phase(const Vec3& x) const {
  if (!outer_.contains(x)) return phi_line(x);
  double psi = cutoff(x);
  double pin = phi_inner(x);
  if (psi == 1.0) return pin;
  return psi * pin + (1.0 - psi) * phi_line(x);
}

GaugeSplit split_potential(const MagneticConfig& cfg, VectorField A, const SplitOptions& opt) {
  const double d = 1e-6 * cfg.tube().half_side;
  JetField dA = [A, d](const Vec3& x) {
    FieldJet out{A(x), {}};
    for (int a = 0; a < 3; ++a) {
      Vec3 e;
      e[a] = d;
      out.d[a] = (0.5 / d) * (A(x + e) - A(x - e));
    }
    return out;
  };
  return split_potential(cfg, std::move(A), std::move(dA), opt);
}

GaugeSplit split_potential(const MagneticConfig& cfg, const VectorPotential& A, const SplitOptions& opt) {
  return split_potential(
      cfg, [A](const Vec3& x) { return A(x); }, [A](const Vec3& x) { return A.jet(x); }, opt);
}

GaugeSplit split_potential(const MagneticConfig& cfg, VectorField A, JetField dA,
                           const SplitOptions& opt) {
  if (!(opt.margin > 0.0) || !(opt.spacing > 0.0))
    throw SplitError("split margin and spacing must be positive");
  GaugeSplit s;
  s.A_ = std::move(A);
  s.inner_ = cfg.tube_bounds();
  s.margin_ = opt.margin;
  s.outer_ = s.inner_.inflated(opt.margin);
  s.piece_ = 0.2 * cfg.tube().half_side;

  std::array<int, 3> n{};
  double hmax = 0.0;
  for (int a = 0; a < 3; ++a) {
    double ext = s.outer_.hi[a] - s.outer_.lo[a];
    n[a] = std::max(2, static_cast<int>(std::ceil(ext / opt.spacing - 1e-9)));
    s.h_[a] = ext / n[a];
    hmax = std::max(hmax, s.h_[a]);
  }
  if (opt.margin < 2.0 * hmax)
    throw SplitError("split margin " + std::to_string(opt.margin) +
                     " cm is below two Born cells (" + std::to_string(2.0 * hmax) +
                     " cm); b would not vanish outside the inflated box");
  s.shape_ = n;
  const int nx = n[0], ny = n[1], nz = n[2];
  auto coord = [&](int a, int i) { return s.outer_.lo[a] + (i + 0.5) * s.h_[a]; };
  auto idx = [&](int i, int j, int k) { return (static_cast<std::size_t>(i) * ny + j) * nz + k; };
  auto node = [&](int i, int j, int k) { return Vec3{coord(0, i), coord(1, j), coord(2, k)}; };

  s.z_top_ = coord(2, nz - 1);
  s.x_out_ = coord(0, nx - 1);
  s.base_ = node(0, 0, nz - 1);

  const std::size_t N = static_cast<std::size_t>(nx) * ny * nz;
  s.nodes_.resize(N);
  std::vector<Vec3> Av(N);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        s.nodes_[idx(i, j, k)] = node(i, j, k);
        Av[idx(i, j, k)] = s.A_(node(i, j, k));
      }

  // phi_inner: along the top plane from the base, then straight down each column.  On
  // columns that pass through the tube the slab part is integrated finely, together with
  // the column integral of curl A, which gives A - grad(phi_inner) there.
  std::vector<double> pin(N), pln(N);
  std::vector<Vec3> bin(N);
  const int top = nz - 1;
  for (int i = 0; i < nx; ++i) {
    if (i > 0)
      pin[idx(i, 0, top)] = pin[idx(i - 1, 0, top)] + edge_integral(s.A_, node(i - 1, 0, top), node(i, 0, top));
    for (int j = 1; j < ny; ++j)
      pin[idx(i, j, top)] = pin[idx(i, j - 1, top)] + edge_integral(s.A_, node(i, j - 1, top), node(i, j, top));
  }
  const auto& tb = cfg.tube();
  const double reach = tb.half_side + 2.0 * cfg.spacing();
  const double zlo = s.inner_.lo.z, zhi = s.inner_.hi.z;
  static const GaussRule g8 = gauss_legendre(8);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Vec3 c = node(i, j, top) - tb.center;
      bool active = std::abs(std::hypot(c.x, c.y) - tb.major_radius) <= reach;
      double cx = 0.0, cy = 0.0;  // integrals of curl A from the top face down
      for (int k = top - 1; k >= 0; --k) {
        Vec3 p = node(i, j, k + 1), q = node(i, j, k);
        double lo = std::max(q.z, zlo), hi = std::min(p.z, zhi);
        if (!active || lo >= hi) {
          pin[idx(i, j, k)] = pin[idx(i, j, k + 1)] + edge_integral(s.A_, p, q);
        } else {
          // pieces above, inside and below the slab
          double acc = 0.0;
          if (p.z > hi) acc += edge_integral(s.A_, p, {q.x, q.y, hi});
          if (lo > q.z) acc += edge_integral(s.A_, {q.x, q.y, lo}, q);
          // an 8-point rule per half tube side resolves the profile
          int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / (0.5 * tb.half_side))));
          double len = (hi - lo) / pieces;
          for (int m = 0; m < pieces; ++m)
            for (std::size_t w = 0; w < g8.x.size(); ++w) {
              Vec3 y{q.x, q.y, hi - (m + 0.5 + 0.5 * g8.x[w]) * len};
              double wl = 0.5 * len * g8.w[w];
              auto [a, d] = dA(y);
              acc -= wl * a.z;
              cx -= wl * (d[1].z - d[2].y);
              cy -= wl * (d[2].x - d[0].z);
            }
          pin[idx(i, j, k)] = pin[idx(i, j, k + 1)] + acc;
        }
        bin[idx(i, j, k)] = {cy, -cx, 0.0};
      }
    }

  // phi_line differs from phi_inner only under the tube footprint, where the column passes
  // through the tube box; there it is carried in from the last column instead
  pln = pin;
  for (int j = 0; j < ny; ++j)
    for (int k = 0; k < nz; ++k) {
      bool any = false;
      for (int i = 0; i < nx && !any; ++i) any = s.below_footprint(node(i, j, k));
      if (!any) continue;
      for (int i = nx - 2; i >= 0; --i) {
        double v = pln[idx(i + 1, j, k)] + edge_integral(s.A_, node(i + 1, j, k), node(i, j, k));
        if (s.below_footprint(node(i, j, k))) pln[idx(i, j, k)] = v;
      }
    }

  s.b_.resize(N);
  s.phi_.resize(N);
  s.beta_ = 0.0;
  double amax = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        std::size_t id = idx(i, j, k);
        Vec3 x = node(i, j, k);
        double psi = 1.0;
        Vec3 dpsi;
        std::array<double, 3> r{}, dr{};
        for (int a = 0; a < 3; ++a) {
          r[a] = ramp(x[a], s.inner_.lo[a], s.inner_.hi[a], s.margin_, &dr[a]);
          psi *= r[a];
        }
        dpsi = {dr[0] * r[1] * r[2], r[0] * dr[1] * r[2], r[0] * r[1] * dr[2]};
        s.phi_[id] = psi * pin[id] + (1.0 - psi) * pln[id];
        s.b_[id] = psi * bin[id] - (pin[id] - pln[id]) * dpsi;
        s.beta_ = std::max(s.beta_, norm(s.b_[id]));
        amax = std::max(amax, norm(Av[id]));
      }

  // A - grad(phi_line) just outside the inflated box, below the footprint and beside it
  const double dstep = 1e-4 * s.margin_;
  Vec3 c = s.outer_.center();
  std::vector<Vec3> probes = {{c.x, c.y, s.outer_.lo.z - 0.5 * s.h_.z},
                              {s.outer_.hi.x + 0.5 * s.h_.x, c.y, c.z}};
  s.outside_residual_ = 0.0;
  for (const auto& p : probes) {
    Vec3 g;
    for (int a = 0; a < 3; ++a) {
      Vec3 e;
      e[a] = dstep;
      g[a] = (s.phi_line(p + e) - s.phi_line(p - e)) / (2.0 * dstep);
    }
    s.outside_residual_ = std::max(s.outside_residual_, norm(s.A_(p) - g));
  }
  if (s.outside_residual_ > 1e-3 * s.beta_ + 1e-6 * amax)
    throw SplitError("gauge split: A - grad(phi) = " + std::to_string(s.outside_residual_) +
                     " outside the inflated box exceeds 1e-3 beta = " +
                     std::to_string(1e-3 * s.beta_) + "; increase the margin");
  return s;
}

}  // namespace ediffract
