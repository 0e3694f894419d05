#pragma once

namespace ediffract {

// Bessel function of the first kind, order one
double bessel_j1(double z);

// J1(z)/z with the limit 1/2 at z = 0
double bessel_j1_ratio(double z);

}  // namespace ediffract
