#pragma once

#include <complex>
#include <numbers>
#include <string>

namespace ediffract {

// Gaussian CGS
struct PhysicalConstants {
  double e;     // esu, negative
  double m;     // g
  double hbar;  // erg s
  double c;     // cm/s

  static PhysicalConstants paper();
  static PhysicalConstants precise();
  static PhysicalConstants by_name(const std::string& name);
};

enum class Dispersion { nonrelativistic, relativistic };

struct IncidentBeam {
  std::complex<double> a_in{1.0, 0.0};
  double k = 0.0;
  double omega_prime = 0.0;

  double wavelength() const { return 2.0 * std::numbers::pi / k; }

  static IncidentBeam from_k(double k, std::complex<double> a_in, const PhysicalConstants& pc);
  static IncidentBeam from_wavelength(double lambda, std::complex<double> a_in,
                                      const PhysicalConstants& pc);
};

double de_broglie_wavelength(double p, const PhysicalConstants& pc);
double dispersion(double k, Dispersion mode, const PhysicalConstants& pc);
double photo_energy(double omega, double work_function, const PhysicalConstants& pc);
double larmor_frequency(double B3, const PhysicalConstants& pc);

}  // namespace ediffract
