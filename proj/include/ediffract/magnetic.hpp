#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "ediffract/constants.hpp"
#include "ediffract/vec.hpp"

namespace ediffract {

using VectorField = std::function<Vec3(const Vec3&)>;
// value and first derivatives, d[a] = dA / dx_a
struct FieldJet {
  Vec3 value;
  std::array<Vec3, 3> d;
};
using JetField = std::function<FieldJet(const Vec3&)>;
using ScalarField = std::function<double(const Vec3&)>;

enum class TubeProfile { gaussian, flat };

// Closed ring tube around the x3 axis through `center`.  The cross-section is the square
// |r - major_radius| < half_side, |x3 - center.z| < half_side in every meridional half-plane;
// B points along e_phi with magnitude strength * g(r - R0) * g(x3 - c3).
struct RingTube {
  Vec3 center{};
  double major_radius = 1.25;
  double half_side = 0.5;
  double strength = 1.0;  // G
  TubeProfile profile = TubeProfile::gaussian;
  int cells_across = 18;
};

enum class CurlMode { analytic, central_difference };

class MagneticConfig {
 public:
  explicit MagneticConfig(const RingTube& tube);

  const RingTube& tube() const { return tube_; }
  // box holding every nonzero sample
  Box tube_bounds() const;
  double spacing() const { return h_; }

  Vec3 field(const Vec3& x) const;
  Vec3 current(const Vec3& x) const;  // curl B
  double total_flux() const;

  // Grid nodes and the sampled field there.  The samples are the central-difference curl
  // of the generating potential P = P3 e3, so their discrete divergence vanishes.
  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<Vec3>& samples() const { return samples_; }
  std::array<int, 3> grid_shape() const { return shape_; }
  double divergence_residual() const;
  // central-difference curl of the samples at interior nodes (zero on the outer layer)
  std::vector<Vec3> sampled_curl() const;

  // signed number of crossings of the film (flat disk spanning the ring hole)
  int film_crossings(const Vec3& p, const Vec3& q) const;

  MagneticConfig scaled(double factor) const;

 private:
  double profile(double t) const;
  double profile_deriv(double t) const;
  double profile_tail(double t) const;  // integral of the profile from t to infinity
  double generator(const Vec3& x) const;

  RingTube tube_;
  double h_ = 0.0;
  double sigma_ = 0.0;
  std::array<int, 3> shape_{};
  Vec3 origin_{};
  std::vector<Vec3> nodes_;
  std::vector<Vec3> samples_;
};

// A = -B3 x2/2 e1 + B3 x1/2 e2
Vec3 uniform_field_potential(double B3, const Vec3& x);

// Biot-Savart potential of the tube, A(x) = sum_c J_c h^3 / (4 pi |x - y_c|)
class VectorPotential {
 public:
  explicit VectorPotential(const MagneticConfig& cfg, CurlMode mode = CurlMode::analytic);
  Vec3 operator()(const Vec3& x) const;
  FieldJet jet(const Vec3& x) const;
  std::size_t source_count() const;

 private:
  struct Sources {
    std::vector<double> x, y, z, jx, jy, jz;
    double rb = 0.0;
  };
  std::shared_ptr<const Sources> src_;
};

Vec3 vector_potential(const MagneticConfig& cfg, const Vec3& x);

struct OrientedDisk {
  Vec3 center;
  Vec3 normal;
  double radius = 0.0;
};

struct FluxResult {
  double flux = 0.0;
  bool partial = false;  // disk not transverse or not covering the whole cross-section
};

FluxResult flux(const MagneticConfig& cfg, const OrientedDisk& disk, int n_radial = 64,
                int n_theta = 128);

// circulation of A around the disk boundary, right-handed about the normal
double circulation(const VectorField& A, const OrientedDisk& disk, int n = 256);

// composite Gauss-Legendre integral of A along a polyline
double line_integral(const VectorField& A, const std::vector<Vec3>& path, double max_piece = 0.1);

// line integral along a path that must stay clear of `excluded`; path.front() is the base
double gauge_phase(const VectorField& A, const std::vector<Vec3>& path, const Box& excluded,
                   double max_piece = 0.1);

// straight segment from base to x, checked against the tube bounds
double gauge_phase(const MagneticConfig& cfg, const VectorField& A, const Vec3& x,
                   const Vec3& base);

// e / (hbar c)
inline double coupling(const PhysicalConstants& pc) { return pc.e / (pc.hbar * pc.c); }

}  // namespace ediffract
