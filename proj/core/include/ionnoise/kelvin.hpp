#pragma once

#include <complex>

namespace ionnoise {

// ker0(x) + i kei0(x) = K0(x exp(i pi/4)), x > 0.
std::complex<double> kelvin_k0(double x);
double kelvin_ker0(double x);
double kelvin_kei0(double x);

// Branch switch between the power series and the large-argument expansion.
inline constexpr double kelvin_switch = 10.0;

std::complex<double> kelvin_k0_series(double x);
std::complex<double> kelvin_k0_asymptotic(double x);

}  // namespace ionnoise
