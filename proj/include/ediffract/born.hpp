#pragma once

#include <vector>

#include "ediffract/gauge_split.hpp"
#include "ediffract/kirchhoff.hpp"

namespace ediffract {

struct BornOptions {
  bool include_quadratic = true;  // the b0 = (e/hbar c)^2 |b|^2 channel
  int max_order = 2;
};

// R_1 .. R_order at (x, y), both outside the inflated box
std::vector<cplx> born_series(const GaugeSplit& split, const PhysicalConstants& pc, double k,
                              const Vec3& x, const Vec3& y, int order,
                              const BornOptions& opt = {});

cplx born_term(const GaugeSplit& split, const PhysicalConstants& pc, double k, const Vec3& x,
               const Vec3& y, int order, const BornOptions& opt = {});

struct MagneticGreen {
  cplx value;
  std::vector<cplx> terms;  // G0, R1, ..., R_order (before the gauge phases)
  double term_ratio = 0.0;  // |R2| / |R1|, when order >= 2
  bool divergence_warning = false;
};

MagneticGreen magnetic_green(const GaugeSplit& split, const PhysicalConstants& pc, double k,
                             const Vec3& x, const Vec3& y, int order,
                             const BornOptions& opt = {});

struct ABPhase {
  double delta_theta = 0.0;
  double delta_len = 0.0;  // delta_theta / k, cm

  static ABPhase from_delta_theta(double delta_theta, double k);
};

// delta_theta = (e/hbar c) [phi(q1) - phi(q2)]
ABPhase ab_phase(const TwoSlitSetup& setup, double k, const ScalarField& phi, double coupling);

// gauge function with phi(q1) - phi(q2) = delta_theta / coupling, linear across the slits
ScalarField imposed_phase(const TwoSlitSetup& setup, double delta_theta, double coupling);

cplx ab_two_slit_amplitude(const TwoSlitSetup& setup, double k, const ScalarField& phi,
                           double coupling, const Vec3& x);

// common displacement delta_len D / (2d); the maxima move to x2(0) - shift
double ab_shift(const ABPhase& phase, const TwoSlitSetup& setup);

}  // namespace ediffract
