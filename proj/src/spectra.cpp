#include "ediffract/spectra.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "ediffract/errors.hpp"

namespace ediffract {

namespace {

constexpr double pi = std::numbers::pi;

// m e^4 Z^2 / (2 hbar^2)
double binding_scale(const SpectralContext& ctx) {
  const auto& p = ctx.consts;
  double e2 = p.e * p.e;
  return p.m * e2 * e2 * ctx.Z * ctx.Z / (2.0 * p.hbar * p.hbar);
}

void check_n(int n) {
  if (n < 1) throw DomainError("principal quantum number must be >= 1, got " + std::to_string(n));
}

void check_m(int n, int m) {
  check_n(n);
  if (std::abs(m) > n - 1)
    throw DomainError("|m| = " + std::to_string(std::abs(m)) + " exceeds n - 1 for n = " +
                      std::to_string(n));
}

}  // namespace

bool is_valid(const QuantumNumbers& q) {
  return q.n >= 1 && q.l >= 0 && q.l <= q.n - 1 && std::abs(q.m) <= q.l && (q.s == 1 || q.s == -1);
}

SpectralContext::SpectralContext(const PhysicalConstants& pc, int Z_, double B3_)
    : consts(pc), Z(Z_), B3(B3_), omega_L(larmor_frequency(B3_, pc)) {
  if (Z < 1) throw DomainError("nuclear charge number must be >= 1");
}

double rydberg_constant(const SpectralContext& ctx) {
  const auto& p = ctx.consts;
  double e2 = p.e * p.e;
  return p.m * e2 * e2 * ctx.Z * ctx.Z / (4.0 * pi * p.hbar * p.hbar * p.hbar * p.c);
}

BalmerLevel balmer_energy(const SpectralContext& ctx, int n) {
  check_n(n);
  double E = -binding_scale(ctx) / (double(n) * n);
  return {E, E / ctx.consts.hbar};
}

double bohr_line(const SpectralContext& ctx, int n, int n_prime) {
  check_n(n);
  check_n(n_prime);
  // (E_n' - E_n)/hbar with 1/n^2 - 1/n'^2 = (n' - n)(n' + n)/(n n')^2
  double a = n, b = n_prime;
  double diff = (b - a) * (b + a) / ((a * b) * (a * b));
  return binding_scale(ctx) / ctx.consts.hbar * diff;
}

CorrespondenceResult correspondence_check(const SpectralContext& ctx, int n, int delta_n) {
  if (n < 2) throw DomainError("correspondence check needs n >= 2");
  if (delta_n < 1) throw DomainError("correspondence check needs delta_n >= 1");
  double wq = std::abs(bohr_line(ctx, n + delta_n, n));
  double wc = 2.0 * binding_scale(ctx) / ctx.consts.hbar / (double(n) * n * n);
  return {wq, wc, wq / (delta_n * wc)};
}

ZeemanRoots classical_zeeman(double omega0, double omega_L) {
  if (!(omega0 > 0.0)) throw DomainError("omega0 must be positive");
  // roots of w^2 + 2 wL w - w0^2 = 0; the small root from Vieta to avoid cancellation
  double r = std::hypot(omega0, omega_L);
  double big = omega_L >= 0.0 ? -omega_L - r : -omega_L + r;
  double small = -omega0 * omega0 / big;
  ZeemanRoots z;
  z.omega_plus = omega_L >= 0.0 ? small : big;
  z.omega_minus = omega_L >= 0.0 ? big : small;
  z.omega_axial = omega0;
  if (omega_L == 0.0)
    z.triplet = {omega0};
  else
    z.triplet = {omega0, omega0 + omega_L, omega0 - omega_L};
  return z;
}

ZeemanRoots classical_zeeman(double omega0, const SpectralContext& ctx) {
  return classical_zeeman(omega0, ctx.omega_L);
}

std::complex<double> azimuthal_selection_factor(int m, int m_prime, int k) {
  return m_prime == m + k ? 1.0 : 0.0;
}

ZeemanLine zeeman_line(const SpectralContext& ctx, int n, int m, int n_prime, int m_prime) {
  check_m(n, m);
  check_m(n_prime, m_prime);
  ZeemanLine z;
  z.factor = 0.0;
  for (int k = -1; k <= 1; ++k)
    if (std::abs(azimuthal_selection_factor(m, m_prime, k)) > std::abs(z.factor))
      z.factor = azimuthal_selection_factor(m, m_prime, k);
  z.allowed = std::abs(m_prime - m) <= 1;
  if (z.allowed) z.omega = bohr_line(ctx, n, n_prime) - ctx.omega_L * (m_prime - m);
  return z;
}

double sommerfeld_action(const SpectralContext& ctx, double E) {
  if (!(E < 0.0)) throw DomainError("Sommerfeld action needs a bound orbit (E < 0)");
  const auto& p = ctx.consts;
  return 2.0 * pi * p.e * p.e * ctx.Z * std::sqrt(p.m / (2.0 * std::abs(E)));
}

double quantized_energy(const SpectralContext& ctx, int n) {
  check_n(n);
  const auto& p = ctx.consts;
  // 2 pi e^2 Z sqrt(m / 2|E|) = 2 pi hbar n
  double ratio = p.e * p.e * ctx.Z / (p.hbar * n);
  return -p.m * ratio * ratio / 2.0;
}

std::vector<AngularMomentumState> spatial_quantization(int l, const PhysicalConstants& pc) {
  if (l < 0) throw DomainError("l must be >= 0");
  std::vector<AngularMomentumState> out;
  for (int m = -l; m <= l; ++m) out.push_back({pc.hbar * l, pc.hbar * m});
  return out;
}

std::vector<QuantumNumbers> enumerate_states(int n) {
  check_n(n);
  std::vector<QuantumNumbers> out;
  for (int l = 0; l <= n - 1; ++l)
    for (int m = -l; m <= l; ++m)
      for (int s : {-1, 1}) out.push_back({n, l, m, s});
  return out;
}

int shell_capacity(int n) { return static_cast<int>(enumerate_states(n).size()); }

double pauli_energy(const SpectralContext& ctx, int n, int m, int s) {
  check_m(n, m);
  if (s != 1 && s != -1) throw DomainError("spin label must be +1 or -1");
  return balmer_energy(ctx, n).E - ctx.omega_L * ctx.consts.hbar * (m + s);
}

}  // namespace ediffract
