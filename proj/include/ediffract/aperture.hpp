#pragma once

#include <variant>
#include <vector>

#include "ediffract/vec.hpp"

namespace ediffract {

// half_width along y1, half_height along y2
struct RectSlit {
  Vec2 center;
  double half_width = 0.0;
  double half_height = 0.0;
};

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

// Planar open set in the screen plane x3 = 0.  A union with no members is the empty aperture.
struct Aperture {
  std::variant<RectSlit, Disk, std::vector<Aperture>> shape;

  static Aperture rect(Vec2 center, double half_width, double half_height);
  static Aperture disk(Vec2 center, double radius);
  static Aperture union_of(std::vector<Aperture> members);
};

struct QuadratureRule {
  std::vector<Vec2> nodes;
  std::vector<double> weights;
  double samples_per_wavelength = 0.0;

  std::size_t size() const { return nodes.size(); }
};

struct FresnelGeometry {
  double s = 0.0;
  double cos_chi = 0.0;
  double factor = 0.0;  // 1 + cos chi
};

bool contains(const Aperture& ap, Vec2 y);
double area(const Aperture& ap);

// throws ConfigError on nonpositive lengths or overlapping union members
void validate(const Aperture& ap);

QuadratureRule quadrature(const Aperture& ap, double k, double samples_per_wavelength);

FresnelGeometry fresnel_factor(const Vec3& x, Vec2 y);

}  // namespace ediffract
