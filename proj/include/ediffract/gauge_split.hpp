#pragma once

#include <array>
#include <vector>

#include "ediffract/magnetic.hpp"

namespace ediffract {

struct SplitOptions {
  double margin = 0.5;    // inflation of the tube bounds, cm
  double spacing = 0.25;  // target Born grid spacing, cm
};

// A = b + grad(phi) with b supported in the inflated tube box.  phi is the line integral
// of A from a base point on the top face, routed around the tube box; inside the inflated
// box it is blended (cosine ramp over the margin) with the integral taken straight down
// from the top face, which is single valued there.  The gradient of that column integral
// is A minus the column integral of curl A, so b needs no difference quotients of phi.
class GaugeSplit {
 public:
  const Box& region() const { return outer_; }  // inflated box
  const Box& tube_box() const { return inner_; }
  double margin() const { return margin_; }
  const Vec3& base() const { return base_; }

  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<Vec3>& b() const { return b_; }
  const std::vector<double>& phi_nodes() const { return phi_; }
  std::array<int, 3> grid_shape() const { return shape_; }
  Vec3 grid_spacing() const { return h_; }
  double cell_volume() const { return h_.x * h_.y * h_.z; }

  double beta() const { return beta_; }
  double ball_radius() const;

  // largest |A - grad(phi_line)| (central differences) at probe points just outside the box
  double outside_residual() const { return outside_residual_; }

  // phi at an arbitrary point
  double phase(const Vec3& x) const;

  // cutoff equal to 1 on the tube box, 0 outside the inflated box
  double cutoff(const Vec3& x) const;

 private:
  friend GaugeSplit split_potential(const MagneticConfig&, VectorField, JetField,
                                    const SplitOptions&);

  double phi_line(const Vec3& x) const;
  double phi_inner(const Vec3& x) const;
  bool below_footprint(const Vec3& x) const;

  VectorField A_;
  Box inner_, outer_;
  double margin_ = 0.0;
  double piece_ = 0.1;
  double z_top_ = 0.0, x_out_ = 0.0;
  Vec3 base_;
  Vec3 h_;
  std::array<int, 3> shape_{};
  std::vector<Vec3> nodes_;
  std::vector<Vec3> b_;
  std::vector<double> phi_;
  double beta_ = 0.0;
  double outside_residual_ = 0.0;
};

GaugeSplit split_potential(const MagneticConfig& cfg, VectorField A, JetField dA,
                           const SplitOptions& opt = {});
// Jacobian of A by central differences
GaugeSplit split_potential(const MagneticConfig& cfg, VectorField A, const SplitOptions& opt = {});
GaugeSplit split_potential(const MagneticConfig& cfg, const VectorPotential& A,
                           const SplitOptions& opt = {});

}  // namespace ediffract
