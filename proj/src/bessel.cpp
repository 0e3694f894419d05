#include "ediffract/bessel.hpp"

#include <cmath>
#include <numbers>

namespace ediffract {

namespace {

constexpr double series_limit = 12.0;

double j1_series(double z) {
  // sum_k (-1)^k (z/2)^(2k+1) / (k! (k+1)!)
  double h = 0.5 * z, q = h * h;
  double term = h, sum = h;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (double(k) * double(k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel expansion, truncated at the smallest term
double j1_asymptotic(double z) {
  const double mu = 4.0;
  double P = 1.0, Q = 0.0, t = 1.0, last = 1e300;
  for (int j = 1; j < 60; ++j) {
    double a = 2.0 * j - 1.0;
    t *= (mu - a * a) / (j * 8.0 * z);
    if (std::abs(t) > last) break;
    last = std::abs(t);
    if (j % 2 == 1) {
      Q += (j % 4 == 1 ? 1.0 : -1.0) * t;
    } else {
      P += (j % 4 == 2 ? -1.0 : 1.0) * t;
    }
  }
  double w = z - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (P * std::cos(w) - Q * std::sin(w));
}

}  // namespace

double bessel_j1(double z) {
  if (z < 0.0) return -bessel_j1(-z);
  return z <= series_limit ? j1_series(z) : j1_asymptotic(z);
}

double bessel_j1_ratio(double z) {
  if (std::abs(z) < 1e-8) return 0.5 - z * z / 16.0;
  return bessel_j1(z) / z;
}

}  // namespace ediffract
