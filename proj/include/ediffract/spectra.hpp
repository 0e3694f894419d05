#pragma once

#include <complex>
#include <vector>

#include "ediffract/constants.hpp"

namespace ediffract {

struct QuantumNumbers {
  int n = 1;
  int l = 0;
  int m = 0;
  int s = 1;  // spin label, +1 or -1
};

bool is_valid(const QuantumNumbers& q);

struct SpectralContext {
  PhysicalConstants consts;
  int Z = 1;
  double B3 = 0.0;
  double omega_L = 0.0;

  SpectralContext(const PhysicalConstants& pc, int Z = 1, double B3 = 0.0);
};

struct AngularMomentumState {
  double L_mag;  // hbar l
  double L_B;    // hbar m
};

struct BalmerLevel {
  double E;      // erg
  double omega;  // E / hbar
};

struct CorrespondenceResult {
  double omega_q;
  double omega_c;
  double ratio;
};

struct ZeemanRoots {
  double omega_plus;
  double omega_minus;
  double omega_axial;                // x3 mode, unshifted
  std::vector<double> triplet;       // {omega0, omega0 + omega_L, omega0 - omega_L}; one entry if omega_L = 0
};

struct ZeemanLine {
  bool allowed = false;
  double omega = 0.0;           // meaningful only when allowed
  std::complex<double> factor;  // largest azimuthal factor over k in {0, +-1}
};

double rydberg_constant(const SpectralContext& ctx);
BalmerLevel balmer_energy(const SpectralContext& ctx, int n);
double bohr_line(const SpectralContext& ctx, int n, int n_prime);
CorrespondenceResult correspondence_check(const SpectralContext& ctx, int n, int delta_n);

ZeemanRoots classical_zeeman(double omega0, double omega_L);
ZeemanRoots classical_zeeman(double omega0, const SpectralContext& ctx);

std::complex<double> azimuthal_selection_factor(int m, int m_prime, int k);
ZeemanLine zeeman_line(const SpectralContext& ctx, int n, int m, int n_prime, int m_prime);

double sommerfeld_action(const SpectralContext& ctx, double E);
// energy at which the action equals h n
double quantized_energy(const SpectralContext& ctx, int n);

std::vector<AngularMomentumState> spatial_quantization(int l, const PhysicalConstants& pc);
std::vector<QuantumNumbers> enumerate_states(int n);
int shell_capacity(int n);

double pauli_energy(const SpectralContext& ctx, int n, int m, int s);

}  // namespace ediffract
