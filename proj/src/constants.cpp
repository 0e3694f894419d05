#include "ediffract/constants.hpp"

#include <cmath>

#include "ediffract/errors.hpp"

namespace ediffract {

PhysicalConstants PhysicalConstants::paper() { return {-4.8e-10, 9.1e-28, 1.1e-27, 3.0e10}; }

// CODATA 2018 in Gaussian units
PhysicalConstants PhysicalConstants::precise() {
  return {-4.80320471e-10, 9.1093837015e-28, 1.054571817e-27, 2.99792458e10};
}

PhysicalConstants PhysicalConstants::by_name(const std::string& name) {
  if (name == "paper") return paper();
  if (name == "precise") return precise();
  throw ConfigError("unknown constant set '" + name + "' (expected paper or precise)");
}

IncidentBeam IncidentBeam::from_k(double k, std::complex<double> a_in, const PhysicalConstants& pc) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive");
  return {a_in, k, dispersion(k, Dispersion::nonrelativistic, pc)};
}

IncidentBeam IncidentBeam::from_wavelength(double lambda, std::complex<double> a_in,
                                           const PhysicalConstants& pc) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("wavelength must be positive");
  return from_k(2.0 * std::numbers::pi / lambda, a_in, pc);
}

double de_broglie_wavelength(double p, const PhysicalConstants& pc) {
  if (!(p > 0.0)) throw DomainError("momentum must be positive");
  return 2.0 * std::numbers::pi * pc.hbar / p;
}

double dispersion(double k, Dispersion mode, const PhysicalConstants& pc) {
  if (!(k >= 0.0)) throw DomainError("wavenumber must be nonnegative");
  if (mode == Dispersion::nonrelativistic) return pc.hbar * k * k / (2.0 * pc.m);
  double mc = pc.m * pc.c;
  return pc.c / pc.hbar * std::sqrt(pc.hbar * k * pc.hbar * k + mc * mc);
}

double photo_energy(double omega, double work_function, const PhysicalConstants& pc) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(work_function >= 0.0)) throw DomainError("work function must be nonnegative");
  return pc.hbar * omega - work_function;
}

double larmor_frequency(double B3, const PhysicalConstants& pc) {
  return pc.e * B3 / (2.0 * pc.m * pc.c);
}

}  // namespace ediffract
