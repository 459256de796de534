#include "ionnoise/kelvin.hpp"

#include <cmath>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"

namespace ionnoise {

using namespace constants;

std::complex<double> kelvin_k0_series(double x) {
    if (!(x > 0.0)) throw DomainError("kelvin_ker0: x must be positive");
    // sum over n of (i y)^n / (n!)^2 with y = x^2/4; even n feed ber, odd n feed bei
    const double y = 0.25 * x * x;
    double ber = 0.0, bei = 0.0, s_ker = 0.0, s_kei = 0.0;
    double t = 1.0;
    double psi = -euler_gamma;  // psi(n + 1)
    static constexpr int sign[4] = {1, 1, -1, -1};
    for (int n = 0; n < 400; ++n) {
        const double term = sign[n % 4] * t;
        if (n % 2 == 0) {
            ber += term;
            s_ker += term * psi;
        } else {
            bei += term;
            s_kei += term * psi;
        }
        psi += 1.0 / (n + 1);
        t *= y / ((n + 1.0) * (n + 1.0));
        if (n > 4 && t * (1.0 + std::abs(psi)) < 1e-18 * (std::abs(ber) + std::abs(bei) + 1e-300))
            break;
    }
    const double l = std::log(0.5 * x);
    const double ker = -l * ber + 0.25 * pi * bei + s_ker;
    const double kei = -l * bei - 0.25 * pi * ber + s_kei;
    return {ker, kei};
}

std::complex<double> kelvin_k0_asymptotic(double x) {
    if (!(x > 0.0)) throw DomainError("kelvin_ker0: x must be positive");
    const std::complex<double> z = x * std::polar(1.0, 0.25 * pi);
    std::complex<double> term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double f = -(2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0));
        const std::complex<double> next = term * f / z;
        const double mag = std::abs(next);
        if (mag > last) break;  // optimal truncation
        sum += next;
        term = next;
        last = mag;
        if (mag < 1e-17) break;
    }
    return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

std::complex<double> kelvin_k0(double x) {
    if (!(x > 0.0)) throw DomainError("kelvin_ker0: x must be positive");
    return x < kelvin_switch ? kelvin_k0_series(x) : kelvin_k0_asymptotic(x);
}

double kelvin_ker0(double x) { return kelvin_k0(x).real(); }
double kelvin_kei0(double x) { return kelvin_k0(x).imag(); }

}  // namespace ionnoise
