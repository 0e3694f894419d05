#include "ediffract/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "ediffract/errors.hpp"
#include "ediffract/gauss.hpp"

namespace ediffract {

namespace {

constexpr double pi = std::numbers::pi;

// C-infinity step: 0 for x <= 0, 1 for x >= 1
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double smooth_step_deriv(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  double da = a / (x * x), db = b / ((1.0 - x) * (1.0 - x));
  return (da * b + a * db) / ((a + b) * (a + b));
}

const GaussRule& gauss8() {
  static const GaussRule g = gauss_legendre(8);
  return g;
}

std::string fmt(const Vec3& p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

}  // namespace

MagneticConfig::MagneticConfig(const RingTube& tube) : tube_(tube) {
  if (!(tube.half_side > 0.0)) throw ConfigError("tube cross-section must be positive");
  if (!(tube.major_radius > tube.half_side))
    throw ConfigError("ring major radius must exceed the cross-section half side");
  if (!std::isfinite(tube.strength)) throw ConfigError("tube strength must be finite");
  if (tube.cells_across < 16) throw ConfigError("need at least 16 cells across the tube");

  const double a = tube.half_side, R0 = tube.major_radius;
  h_ = 2.0 * a / tube.cells_across;
  sigma_ = a / 6.0;

  // two halo layers around the support so the divergence stencil sees the whole field
  int nxy = static_cast<int>(std::ceil(2.0 * (R0 + a) / h_ - 1e-9)) + 4;
  int nz = tube.cells_across + 4;
  shape_ = {nxy, nxy, nz};
  auto coord = [this](int i, int n, double c) { return c + (i + 0.5 - 0.5 * n) * h_; };

  // generator P3 on the node lattice extended by one layer in x1, x2
  const int ex = nxy + 2;
  std::vector<double> P(static_cast<std::size_t>(ex) * ex * nz);
  auto pidx = [&](int i, int j, int k) { return (static_cast<std::size_t>(i + 1) * ex + (j + 1)) * nz + k; };
  for (int i = -1; i <= nxy; ++i)
    for (int j = -1; j <= nxy; ++j)
      for (int k = 0; k < nz; ++k)
        P[pidx(i, j, k)] = generator({coord(i, nxy, tube.center.x), coord(j, nxy, tube.center.y),
                                      coord(k, nz, tube.center.z)});

  nodes_.reserve(static_cast<std::size_t>(nxy) * nxy * nz);
  samples_.reserve(nodes_.capacity());
  for (int i = 0; i < nxy; ++i)
    for (int j = 0; j < nxy; ++j)
      for (int k = 0; k < nz; ++k) {
        nodes_.push_back({coord(i, nxy, tube.center.x), coord(j, nxy, tube.center.y),
                          coord(k, nz, tube.center.z)});
        double bx = (P[pidx(i, j + 1, k)] - P[pidx(i, j - 1, k)]) / (2.0 * h_);
        double by = -(P[pidx(i + 1, j, k)] - P[pidx(i - 1, j, k)]) / (2.0 * h_);
        samples_.push_back({bx, by, 0.0});
      }
}

Box MagneticConfig::tube_bounds() const {
  double L = tube_.major_radius + tube_.half_side, a = tube_.half_side;
  // the difference stencil carries the samples one lattice step past the analytic support
  return Box{tube_.center - Vec3{L, L, a}, tube_.center + Vec3{L, L, a}}.inflated(h_);
}

double MagneticConfig::profile(double t) const {
  const double a = tube_.half_side;
  if (std::abs(t) >= a) return 0.0;
  if (tube_.profile == TubeProfile::gaussian) return std::exp(-t * t / (2.0 * sigma_ * sigma_));
  return smooth_step((a - std::abs(t)) / (0.5 * a));
}

double MagneticConfig::profile_deriv(double t) const {
  const double a = tube_.half_side;
  if (std::abs(t) >= a) return 0.0;
  if (tube_.profile == TubeProfile::gaussian) return -t / (sigma_ * sigma_) * profile(t);
  double sgn = t < 0.0 ? -1.0 : 1.0;
  return -sgn * smooth_step_deriv((a - std::abs(t)) / (0.5 * a)) / (0.5 * a);
}

double MagneticConfig::profile_tail(double t) const {
  const double a = tube_.half_side;
  double lo = std::clamp(t, -a, a);
  if (tube_.profile == TubeProfile::gaussian) {
    double q = sigma_ * std::sqrt(2.0);
    return sigma_ * std::sqrt(pi / 2.0) * (std::erf(a / q) - std::erf(lo / q));
  }
  const auto& g = gauss8();
  constexpr int pieces = 32;
  double len = (a - lo) / pieces, s = 0.0;
  for (int p = 0; p < pieces; ++p) {
    double m = lo + (p + 0.5) * len;
    for (std::size_t q = 0; q < g.x.size(); ++q) s += g.w[q] * profile(m + 0.5 * len * g.x[q]);
  }
  return 0.5 * len * s;
}

double MagneticConfig::generator(const Vec3& x) const {
  Vec3 p = x - tube_.center;
  double r = std::hypot(p.x, p.y);
  return tube_.strength * profile(p.z) * profile_tail(r - tube_.major_radius);
}

Vec3 MagneticConfig::field(const Vec3& x) const {
  Vec3 p = x - tube_.center;
  double r = std::hypot(p.x, p.y);
  if (r == 0.0) return {};
  double F = tube_.strength * profile(r - tube_.major_radius) * profile(p.z);
  return {-F * p.y / r, F * p.x / r, 0.0};
}

Vec3 MagneticConfig::current(const Vec3& x) const {
  Vec3 p = x - tube_.center;
  double r = std::hypot(p.x, p.y);
  if (r == 0.0) return {};
  double u = r - tube_.major_radius, B0 = tube_.strength;
  double jr = -B0 * profile(u) * profile_deriv(p.z);
  double jz = B0 * profile(p.z) * (profile_deriv(u) + profile(u) / r);
  return {jr * p.x / r, jr * p.y / r, jz};
}

double MagneticConfig::total_flux() const {
  double s = profile_tail(-tube_.half_side);
  return tube_.strength * s * s;
}

double MagneticConfig::divergence_residual() const {
  const auto [nx, ny, nz] = shape_;
  auto at = [&](int i, int j, int k) -> const Vec3& {
    return samples_[(static_cast<std::size_t>(i) * ny + j) * nz + k];
  };
  double worst = 0.0, peak = 0.0;
  for (const auto& b : samples_) peak = std::max(peak, norm(b));
  if (peak == 0.0) return 0.0;
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < ny - 1; ++j)
      for (int k = 1; k < nz - 1; ++k) {
        double div = (at(i + 1, j, k).x - at(i - 1, j, k).x + at(i, j + 1, k).y -
                      at(i, j - 1, k).y + at(i, j, k + 1).z - at(i, j, k - 1).z) /
                     (2.0 * h_);
        worst = std::max(worst, std::abs(div));
      }
  return worst * h_ / peak;
}

std::vector<Vec3> MagneticConfig::sampled_curl() const {
  const auto [nx, ny, nz] = shape_;
  auto at = [&](int i, int j, int k) -> const Vec3& {
    return samples_[(static_cast<std::size_t>(i) * ny + j) * nz + k];
  };
  std::vector<Vec3> out(samples_.size());
  for (int i = 1; i < nx - 1; ++i)
    for (int j = 1; j < ny - 1; ++j)
      for (int k = 1; k < nz - 1; ++k) {
        double dyBz = at(i, j + 1, k).z - at(i, j - 1, k).z;
        double dzBy = at(i, j, k + 1).y - at(i, j, k - 1).y;
        double dzBx = at(i, j, k + 1).x - at(i, j, k - 1).x;
        double dxBz = at(i + 1, j, k).z - at(i - 1, j, k).z;
        double dxBy = at(i + 1, j, k).y - at(i - 1, j, k).y;
        double dyBx = at(i, j + 1, k).x - at(i, j - 1, k).x;
        out[(static_cast<std::size_t>(i) * ny + j) * nz + k] =
            (0.5 / h_) * Vec3{dyBz - dzBy, dzBx - dxBz, dxBy - dyBx};
      }
  return out;
}

int MagneticConfig::film_crossings(const Vec3& p, const Vec3& q) const {
  double c3 = tube_.center.z;
  double dp = p.z - c3, dq = q.z - c3;
  if (dp * dq >= 0.0) return 0;
  double t = dp / (dp - dq);
  Vec3 m = p + t * (q - p) - tube_.center;
  if (std::hypot(m.x, m.y) >= tube_.major_radius) return 0;
  return dq > dp ? 1 : -1;
}

MagneticConfig MagneticConfig::scaled(double factor) const {
  RingTube t = tube_;
  t.strength *= factor;
  return MagneticConfig(t);
}

Vec3 uniform_field_potential(double B3, const Vec3& x) { return {-0.5 * B3 * x.y, 0.5 * B3 * x.x, 0.0}; }

VectorPotential::VectorPotential(const MagneticConfig& cfg, CurlMode mode) {
  auto s = std::make_shared<Sources>();
  const double h = cfg.spacing();
  const double w = h * h * h / (4.0 * pi);
  s->rb = h * std::cbrt(3.0 / (4.0 * pi));
  std::vector<Vec3> J;
  if (mode == CurlMode::analytic) {
    J.reserve(cfg.nodes().size());
    for (const auto& y : cfg.nodes()) J.push_back(cfg.current(y));
  } else {
    J = cfg.sampled_curl();
  }
  double jmax = 0.0;
  for (const auto& j : J) jmax = std::max(jmax, norm(j));
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (jmax == 0.0 || norm(J[i]) <= 1e-14 * jmax) continue;
    const Vec3& y = cfg.nodes()[i];
    s->x.push_back(y.x);
    s->y.push_back(y.y);
    s->z.push_back(y.z);
    s->jx.push_back(w * J[i].x);
    s->jy.push_back(w * J[i].y);
    s->jz.push_back(w * J[i].z);
  }
  src_ = std::move(s);
}

std::size_t VectorPotential::source_count() const { return src_->x.size(); }

Vec3 VectorPotential::operator()(const Vec3& p) const {
  const Sources& s = *src_;
  const double rb2 = s.rb * s.rb, inv2rb3 = 0.5 / (rb2 * s.rb);
  const std::size_t n = s.x.size();
  const double* sx = s.x.data();
  const double* sy = s.y.data();
  const double* sz = s.z.data();
  const double* jx = s.jx.data();
  const double* jy = s.jy.data();
  const double* jz = s.jz.data();
  double ax = 0.0, ay = 0.0, az = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = p.x - sx[i], dy = p.y - sy[i], dz = p.z - sz[i];
    double r2 = dx * dx + dy * dy + dz * dz;
    // inside the equal-volume ball the kernel is replaced by its ball average
    double far = 1.0 / std::sqrt(std::max(r2, rb2));
    double inv = r2 >= rb2 ? far : (3.0 * rb2 - r2) * inv2rb3;
    ax += jx[i] * inv;
    ay += jy[i] * inv;
    az += jz[i] * inv;
  }
  return {ax, ay, az};
}

FieldJet VectorPotential::jet(const Vec3& p) const {
  const Sources& s = *src_;
  const double rb2 = s.rb * s.rb, inv2rb3 = 0.5 / (rb2 * s.rb), inv_rb3 = 2.0 * inv2rb3;
  const std::size_t n = s.x.size();
  const double* sx = s.x.data();
  const double* sy = s.y.data();
  const double* sz = s.z.data();
  const double* jx = s.jx.data();
  const double* jy = s.jy.data();
  const double* jz = s.jz.data();
  double a0 = 0, a1 = 0, a2 = 0, d00 = 0, d01 = 0, d02 = 0, d10 = 0, d11 = 0, d12 = 0, d20 = 0,
         d21 = 0, d22 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = p.x - sx[i], dy = p.y - sy[i], dz = p.z - sz[i];
    double r2 = dx * dx + dy * dy + dz * dz;
    double far = 1.0 / std::sqrt(std::max(r2, rb2));
    bool out = r2 >= rb2;
    double inv = out ? far : (3.0 * rb2 - r2) * inv2rb3;
    // radial derivative of the kernel over r, continuous at the ball surface
    double f = out ? -far * far * far : -inv_rb3;
    a0 += jx[i] * inv;
    a1 += jy[i] * inv;
    a2 += jz[i] * inv;
    double fx = f * dx, fy = f * dy, fz = f * dz;
    d00 += jx[i] * fx;
    d01 += jy[i] * fx;
    d02 += jz[i] * fx;
    d10 += jx[i] * fy;
    d11 += jy[i] * fy;
    d12 += jz[i] * fy;
    d20 += jx[i] * fz;
    d21 += jy[i] * fz;
    d22 += jz[i] * fz;
  }
  return {{a0, a1, a2}, {Vec3{d00, d01, d02}, Vec3{d10, d11, d12}, Vec3{d20, d21, d22}}};
}

Vec3 vector_potential(const MagneticConfig& cfg, const Vec3& x) { return VectorPotential(cfg)(x); }

FluxResult flux(const MagneticConfig& cfg, const OrientedDisk& disk, int n_radial, int n_theta) {
  Vec3 n = normalized(disk.normal);
  Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1 = normalized(cross(n, helper));
  Vec3 e2 = cross(n, e1);
  GaussRule g = gauss_legendre(n_radial);
  double total = 0.0;
  for (int i = 0; i < n_radial; ++i) {
    double rho = 0.5 * disk.radius * (g.x[i] + 1.0);
    double ring = 0.0;
    for (int t = 0; t < n_theta; ++t) {
      double th = 2.0 * pi * t / n_theta;
      Vec3 y = disk.center + rho * std::cos(th) * e1 + rho * std::sin(th) * e2;
      ring += dot(cfg.field(y), n);
    }
    total += 0.5 * disk.radius * g.w[i] * rho * ring * (2.0 * pi / n_theta);
  }

  FluxResult res{total, true};
  const auto& tb = cfg.tube();
  Vec3 p = disk.center - tb.center;
  double rc = std::hypot(p.x, p.y);
  if (rc > 0.0) {
    Vec3 ephi{-p.y / rc, p.x / rc, 0.0};
    Vec3 er{p.x / rc, p.y / rc, 0.0};
    bool transverse = std::abs(dot(n, ephi)) > 1.0 - 1e-9;
    bool covers = disk.radius < rc;
    for (double du : {-1.0, 1.0})
      for (double dv : {-1.0, 1.0}) {
        Vec3 corner = tb.center + (tb.major_radius + du * tb.half_side) * er +
                      Vec3{0, 0, dv * tb.half_side};
        if (norm(corner - disk.center) >= disk.radius) covers = false;
      }
    res.partial = !(transverse && covers);
  }
  return res;
}

double circulation(const VectorField& A, const OrientedDisk& disk, int n) {
  Vec3 nn = normalized(disk.normal);
  Vec3 helper = std::abs(nn.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1 = normalized(cross(nn, helper));
  Vec3 e2 = cross(nn, e1);
  double s = 0.0;
  for (int t = 0; t < n; ++t) {
    double th = 2.0 * pi * t / n;
    Vec3 y = disk.center + disk.radius * (std::cos(th) * e1 + std::sin(th) * e2);
    Vec3 tangent = disk.radius * (-std::sin(th) * e1 + std::cos(th) * e2);
    s += dot(A(y), tangent);
  }
  return s * 2.0 * pi / n;
}

double line_integral(const VectorField& A, const std::vector<Vec3>& path, double max_piece) {
  const auto& g = gauss8();
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    Vec3 d = path[s + 1] - path[s];
    double len = norm(d);
    if (len == 0.0) continue;
    int pieces = std::max(1, static_cast<int>(std::ceil(len / max_piece)));
    double acc = 0.0;
    for (int p = 0; p < pieces; ++p)
      for (std::size_t q = 0; q < g.x.size(); ++q) {
        double t = (p + 0.5 + 0.5 * g.x[q]) / pieces;
        acc += g.w[q] * dot(A(path[s] + t * d), d);
      }
    total += 0.5 * acc / pieces;
  }
  return total;
}

double gauge_phase(const VectorField& A, const std::vector<Vec3>& path, const Box& excluded,
                   double max_piece) {
  if (path.empty()) throw PathError("empty path");
  for (std::size_t s = 0; s + 1 < path.size(); ++s)
    if (segment_hits_box(path[s], path[s + 1], excluded))
      throw PathError("path segment " + fmt(path[s]) + " -> " + fmt(path[s + 1]) +
                      " enters the excluded tube region");
  if (path.size() == 1 && excluded.contains(path[0]))
    throw PathError("base point " + fmt(path[0]) + " lies in the excluded tube region");
  return line_integral(A, path, max_piece);
}

double gauge_phase(const MagneticConfig& cfg, const VectorField& A, const Vec3& x,
                   const Vec3& base) {
  if (cfg.film_crossings(base, x) != 0)
    throw PathError("segment " + fmt(base) + " -> " + fmt(x) + " crosses the film");
  return gauge_phase(A, {base, x}, cfg.tube_bounds(), 0.2 * cfg.tube().half_side);
}

}  // namespace ediffract
