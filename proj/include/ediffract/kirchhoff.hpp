#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "ediffract/aperture.hpp"
#include "ediffract/constants.hpp"
#include "ediffract/vec.hpp"

namespace ediffract {

using cplx = std::complex<double>;

// -exp(ik|x-y|) / (4 pi |x-y|)
cplx green0(const Vec3& x, const Vec3& y, double k);

// gradient of green0 with respect to its second argument y
std::array<cplx, 3> green0_grad_y(const Vec3& x, const Vec3& y, double k);

// d/dy3 of green0(x, (y, y3)) at y3 = 0
cplx green0_normal_derivative(const Vec3& x, Vec2 y, double k);

// max over directions of |rho (d/d|y| - ik) kernel(y)| on the sphere |y| = rho
double radiation_residual(const std::function<cplx(const Vec3&)>& kernel, double k, double rho,
                          int directions = 64);

struct AmplitudeField {
  std::vector<Vec3> points;
  std::vector<cplx> values;
  std::vector<double> intensity;
  std::vector<bool> near_field;  // closer than 2 lambda to the aperture
};

AmplitudeField kirchhoff_amplitude(const Aperture& ap, const IncidentBeam& beam,
                                   const std::vector<Vec3>& points, const QuadratureRule& rule,
                                   unsigned threads = 0);

struct ConvergedAmplitude {
  AmplitudeField field;
  double samples_per_wavelength = 0.0;
  double last_change = 0.0;  // max |a_new - a_old| / max |a_new|
  bool converged = false;
};

// doubles the density from start_spw until the relative change drops below tol
ConvergedAmplitude kirchhoff_converged(const Aperture& ap, const IncidentBeam& beam,
                                       const std::vector<Vec3>& points, double start_spw,
                                       double tol = 0.005, int max_doublings = 4);

// aperture integral of exp(-ik(xi1 y1 + xi2 y2)) over Q, closed form
cplx aperture_transform(const Aperture& ap, double k, double xi1, double xi2);

cplx fraunhofer_amplitude(const Aperture& ap, const IncidentBeam& beam, const Vec3& xi,
                          double range);

cplx airy_amplitude(double R, const IncidentBeam& beam, double chi_bar, double range);

struct TwoSlitSetup {
  Vec3 q1, q2;
  double D = 0.0;

  double half_separation() const { return 0.5 * norm(q1 - q2); }
  static TwoSlitSetup canonical(double d, double D);
};

cplx two_slit_amplitude(const TwoSlitSetup& setup, double k, const Vec3& x);

// (2/D) |exp(i(k(s1 - s2) - delta_theta)) + 1|
double two_slit_small_angle_modulus(const TwoSlitSetup& setup, double k, const Vec3& x,
                                    double delta_theta = 0.0);

struct FringeRoot {
  int n = 0;
  bool in_range = false;
  double x2_exact = 0.0;
  double x2_small_angle = 0.0;
};

// maxima of the canonical two-slit pattern on the line x1 = 0, x3 = D
std::vector<FringeRoot> fringe_maxima(const TwoSlitSetup& setup, double lambda, int n_min,
                                      int n_max, double delta_len = 0.0);

}  // namespace ediffract
