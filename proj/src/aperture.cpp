#include "ediffract/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ediffract/errors.hpp"

namespace ediffract {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// signed area of the disk (radius R, centred at the origin) inside the rectangle spanned by
// the origin and (X, Y)
double corner_area(double X, double Y, double R) {
  double sx = X < 0.0 ? -1.0 : 1.0, sy = Y < 0.0 ? -1.0 : 1.0;
  double a = std::min(std::abs(X), R), b = std::min(std::abs(Y), R);
  double g;
  if (a * a + b * b <= R * R) {
    g = a * b;
  } else {
    auto P = [R](double x) {
      double t = std::clamp(x / R, -1.0, 1.0);
      return 0.5 * (x * std::sqrt(std::max(0.0, R * R - x * x)) + R * R * std::asin(t));
    };
    double xs = std::sqrt(std::max(0.0, R * R - b * b));
    g = b * xs + P(a) - P(xs);
  }
  return sx * sy * g;
}

double clipped_cell_area(double x0, double x1, double y0, double y1, double R) {
  return corner_area(x1, y1, R) - corner_area(x0, y1, R) - corner_area(x1, y0, R) +
         corner_area(x0, y0, R);
}

// smallest power of two >= extent / hmax; doubling the density doubles the count exactly
int cell_count(double extent, double hmax) {
  double x = extent / hmax;
  int n = 1;
  while (n < x) {
    n *= 2;
    if (n > (1 << 24)) throw ConfigError("aperture too large for requested quadrature density");
  }
  return n;
}

void append_rect(const RectSlit& r, double hmax, QuadratureRule& q) {
  int nx = cell_count(2.0 * r.half_width, hmax), ny = cell_count(2.0 * r.half_height, hmax);
  double hx = 2.0 * r.half_width / nx, hy = 2.0 * r.half_height / ny;
  for (int i = 0; i < nx; ++i) {
    double ox = (i + 0.5 - 0.5 * nx) * hx;
    for (int j = 0; j < ny; ++j) {
      double oy = (j + 0.5 - 0.5 * ny) * hy;
      q.nodes.push_back({r.center.x + ox, r.center.y + oy});
      q.weights.push_back(hx * hy);
    }
  }
}

void append_disk(const Disk& d, double hmax, QuadratureRule& q) {
  const double R = d.radius;
  int n = cell_count(2.0 * R, hmax);
  double h = 2.0 * R / n;
  constexpr int sub = 8;
  for (int i = 0; i < n; ++i) {
    double ox = (i + 0.5 - 0.5 * n) * h;
    for (int j = 0; j < n; ++j) {
      double oy = (j + 0.5 - 0.5 * n) * h;
      double w = clipped_cell_area(ox - 0.5 * h, ox + 0.5 * h, oy - 0.5 * h, oy + 0.5 * h, R);
      if (!(w > 0.0)) continue;
      // node placement on the mirrored cell keeps the rule exactly symmetric
      double ax = std::abs(ox), ay = std::abs(oy);
      double px = ax, py = ay;
      if (std::hypot(ax + 0.5 * h, ay + 0.5 * h) >= R) {
        double sx = 0.0, sy = 0.0;
        int cnt = 0;
        for (int u = 0; u < sub; ++u)
          for (int v = 0; v < sub; ++v) {
            double x = ax + (u + 0.5 - 0.5 * sub) * h / sub;
            double y = ay + (v + 0.5 - 0.5 * sub) * h / sub;
            if (x * x + y * y < R * R) {
              sx += x;
              sy += y;
              ++cnt;
            }
          }
        if (cnt > 0) {
          px = sx / cnt;
          py = sy / cnt;
        } else {
          px = std::max(0.0, ax - 0.5 * h);
          py = std::max(0.0, ay - 0.5 * h);
          if (px * px + py * py >= R * R) continue;
        }
      }
      q.nodes.push_back({d.center.x + std::copysign(px, ox), d.center.y + std::copysign(py, oy)});
      q.weights.push_back(w);
    }
  }
}

void append(const Aperture& ap, double hmax, QuadratureRule& q) {
  std::visit(overloaded{[&](const RectSlit& r) { append_rect(r, hmax, q); },
                        [&](const Disk& d) { append_disk(d, hmax, q); },
                        [&](const std::vector<Aperture>& v) {
                          for (const auto& a : v) append(a, hmax, q);
                        }},
             ap.shape);
}

struct Bounds {
  double x0, x1, y0, y1;
  bool empty;
};

Bounds bounds(const Aperture& ap) {
  return std::visit(
      overloaded{[](const RectSlit& r) {
                   return Bounds{r.center.x - r.half_width, r.center.x + r.half_width,
                                 r.center.y - r.half_height, r.center.y + r.half_height, false};
                 },
                 [](const Disk& d) {
                   return Bounds{d.center.x - d.radius, d.center.x + d.radius,
                                 d.center.y - d.radius, d.center.y + d.radius, false};
                 },
                 [](const std::vector<Aperture>& v) {
                   Bounds b{0, 0, 0, 0, true};
                   for (const auto& a : v) {
                     Bounds m = bounds(a);
                     if (m.empty) continue;
                     if (b.empty) {
                       b = m;
                     } else {
                       b.x0 = std::min(b.x0, m.x0);
                       b.x1 = std::max(b.x1, m.x1);
                       b.y0 = std::min(b.y0, m.y0);
                       b.y1 = std::max(b.y1, m.y1);
                     }
                   }
                   return b;
                 }},
      ap.shape);
}

}  // namespace

Aperture Aperture::rect(Vec2 center, double half_width, double half_height) {
  return {RectSlit{center, half_width, half_height}};
}

Aperture Aperture::disk(Vec2 center, double radius) { return {Disk{center, radius}}; }

Aperture Aperture::union_of(std::vector<Aperture> members) { return {std::move(members)}; }

bool contains(const Aperture& ap, Vec2 y) {
  return std::visit(overloaded{[&](const RectSlit& r) {
                                 return std::abs(y.x - r.center.x) < r.half_width &&
                                        std::abs(y.y - r.center.y) < r.half_height;
                               },
                               [&](const Disk& d) {
                                 double dx = y.x - d.center.x, dy = y.y - d.center.y;
                                 return dx * dx + dy * dy < d.radius * d.radius;
                               },
                               [&](const std::vector<Aperture>& v) {
                                 return std::any_of(v.begin(), v.end(), [&](const Aperture& a) {
                                   return contains(a, y);
                                 });
                               }},
                    ap.shape);
}

double area(const Aperture& ap) {
  return std::visit(overloaded{[](const RectSlit& r) { return 4.0 * r.half_width * r.half_height; },
                               [](const Disk& d) { return std::numbers::pi * d.radius * d.radius; },
                               [](const std::vector<Aperture>& v) {
                                 double s = 0.0;
                                 for (const auto& a : v) s += area(a);
                                 return s;
                               }},
                    ap.shape);
}

void validate(const Aperture& ap) {
  std::visit(
      overloaded{[](const RectSlit& r) {
                   if (!(r.half_width > 0.0 && r.half_height > 0.0) ||
                       !std::isfinite(r.half_width * r.half_height))
                     throw ConfigError("slit half-widths must be positive and finite");
                 },
                 [](const Disk& d) {
                   if (!(d.radius > 0.0) || !std::isfinite(d.radius))
                     throw ConfigError("disk radius must be positive and finite");
                 },
                 [](const std::vector<Aperture>& v) {
                   for (const auto& a : v) validate(a);
                   constexpr int ns = 64;
                   for (std::size_t i = 0; i < v.size(); ++i)
                     for (std::size_t j = i + 1; j < v.size(); ++j) {
                       Bounds a = bounds(v[i]), b = bounds(v[j]);
                       if (a.empty || b.empty) continue;
                       double x0 = std::max(a.x0, b.x0), x1 = std::min(a.x1, b.x1);
                       double y0 = std::max(a.y0, b.y0), y1 = std::min(a.y1, b.y1);
                       if (x0 >= x1 || y0 >= y1) continue;
                       for (int u = 0; u < ns; ++u)
                         for (int w = 0; w < ns; ++w) {
                           Vec2 p{x0 + (u + 0.5) * (x1 - x0) / ns, y0 + (w + 0.5) * (y1 - y0) / ns};
                           if (contains(v[i], p) && contains(v[j], p))
                             throw ConfigError("aperture union members " + std::to_string(i) +
                                               " and " + std::to_string(j) + " overlap");
                         }
                     }
                 }},
      ap.shape);
}

QuadratureRule quadrature(const Aperture& ap, double k, double samples_per_wavelength) {
  if (!(k > 0.0)) throw DomainError("quadrature needs k > 0");
  if (!(samples_per_wavelength >= 4.0))
    throw ConfigError("samples per wavelength must be at least 4");
  validate(ap);
  QuadratureRule q;
  q.samples_per_wavelength = samples_per_wavelength;
  double hmax = 2.0 * std::numbers::pi / k / samples_per_wavelength;
  append(ap, hmax, q);
  return q;
}

FresnelGeometry fresnel_factor(const Vec3& x, Vec2 y) {
  if (!(x.z > 0.0)) throw DomainError("observation point needs x3 > 0");
  double dx = x.x - y.x, dy = x.y - y.y;
  double s = std::sqrt(dx * dx + dy * dy + x.z * x.z);
  double c = x.z / s;
  return {s, c, 1.0 + c};
}

}  // namespace ediffract
