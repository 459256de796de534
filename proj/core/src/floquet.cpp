#include "ionnoise/trap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"

namespace ionnoise {

namespace {

// C_2j / C_2(j-1) for j >= 1 (sign = +1) or C_-2j / C_-2(j-1) (sign = -1),
// evaluated bottom-up from a zero tail at depth.
double continued_fraction(double a, double q, double b, int j, int sign, int depth) {
    double r = 0.0;
    for (int k = depth; k >= j; --k) {
        const double s = b + 2.0 * sign * k;
        const double den = s * s - a - q * r;
        if (std::abs(den) < 1e-300) {
            std::ostringstream msg;
            msg << "continued fraction hit a pole at j=" << sign * k << " (b=" << b << ")";
            throw ConvergenceError(msg.str());
        }
        r = q / den;
    }
    return r;
}

double characteristic(double a, double q, double b, int depth) {
    return a + q * (continued_fraction(a, q, b, 1, +1, depth) +
                    continued_fraction(a, q, b, 1, -1, depth));
}

}  // namespace

double ModeFunction::coefficient(int j) const {
    if (j < -j_max || j > j_max) return 0.0;
    return coefficients[static_cast<std::size_t>(j + j_max)];
}

std::complex<double> ModeFunction::value(double t) const {
    std::complex<double> u = 0.0;
    for (int j = -j_max; j <= j_max; ++j) {
        const double phase = (0.5 * b + j) * omega_rf * t;
        u += coefficient(j) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return u;
}

std::complex<double> ModeFunction::derivative(double t) const {
    std::complex<double> du = 0.0;
    for (int j = -j_max; j <= j_max; ++j) {
        const double w = (0.5 * b + j) * omega_rf;
        du += coefficient(j) * w * std::complex<double>(-std::sin(w * t), std::cos(w * t));
    }
    return du;
}

std::complex<double> ModeFunction::second_derivative(double t) const {
    std::complex<double> d2u = 0.0;
    for (int j = -j_max; j <= j_max; ++j) {
        const double w = (0.5 * b + j) * omega_rf;
        d2u -= coefficient(j) * w * w * std::complex<double>(std::cos(w * t), std::sin(w * t));
    }
    return d2u;
}

double ModeFunction::residual(int samples) const {
    if (omega_rf <= 0.0) return 0.0;
    const double scale2 = 0.25 * omega_rf * omega_rf;
    const double restoring = scale2 * std::max(std::abs(a) + 2.0 * std::abs(q), b * b);
    if (restoring == 0.0) return 0.0;
    const double period = (b > 0.0) ? 2.0 * constants::pi / (0.5 * b * omega_rf)
                                     : 2.0 * constants::pi / omega_rf;
    double worst = 0.0;
    double umax = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = period * k / samples;
        const auto u = value(t);
        const auto r = second_derivative(t) + scale2 * (a + 2.0 * q * std::cos(omega_rf * t)) * u;
        worst = std::max(worst, std::abs(r));
        umax = std::max(umax, std::abs(u));
    }
    return worst / (restoring * umax);
}

double secular_frequency_approx(const DriveParameters& drive) {
    const double s = drive.a + 0.5 * drive.q * drive.q;
    if (s < 0.0) throw StabilityError("a + q^2/2 < 0: no harmonic approximation of the secular motion");
    return 0.5 * drive.omega_rf * std::sqrt(s);
}

double secular_frequency(const DriveParameters& drive) {
    return mode_function(drive, 5).secular_frequency();
}

ModeFunction mode_function(const DriveParameters& drive, int j_max, double tol) {
    if (j_max < 1) throw DomainError("mode_function: j_max must be >= 1");
    if (!(drive.omega_rf > 0.0)) throw DomainError("mode_function: omega_rf must be positive");
    const double a = drive.a;
    const double q = drive.q;
    const int depth = std::max(j_max, 10) + 20;

    // b^2 = a + q (C_2/C_0 + C_-2/C_0), iterated to a fixed point
    double b2 = a + 0.5 * q * q;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
        if (b2 < 0.0) break;
        const double next = characteristic(a, q, std::sqrt(b2), depth);
        if (std::abs(next - b2) <= tol * std::max(1.0, std::abs(next))) {
            b2 = next;
            converged = true;
            break;
        }
        b2 = next;
    }
    if (b2 < 0.0) {
        std::ostringstream msg;
        msg << "unstable Mathieu parameters (a=" << a << ", q=" << q
            << "): Floquet exponent is imaginary, the solution grows exponentially";
        throw StabilityError(msg.str());
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "Floquet exponent iteration did not converge for a=" << a << ", q=" << q;
        throw ConvergenceError(msg.str());
    }
    const double b = std::sqrt(b2);
    if (b >= 1.0) {
        std::ostringstream msg;
        msg << "unstable Mathieu parameters (a=" << a << ", q=" << q
            << "): b=" << b << " is outside the first stability region";
        throw StabilityError(msg.str());
    }

    // deeper truncation must agree with the working one
    const double check = characteristic(a, q, b, depth + 10);
    if (std::abs(check - b2) > 10.0 * tol * std::max(1.0, b2)) {
        std::ostringstream msg;
        msg << "continued-fraction truncation not converged: |delta b^2| = " << std::abs(check - b2);
        throw ConvergenceError(msg.str());
    }

    ModeFunction m;
    m.a = a;
    m.q = q;
    m.omega_rf = drive.omega_rf;
    m.b = b;
    m.j_max = j_max;
    m.coefficients.assign(static_cast<std::size_t>(2 * j_max + 1), 0.0);
    m.coefficients[static_cast<std::size_t>(j_max)] = 1.0;
    for (int j = 1; j <= j_max; ++j) {
        const auto up = static_cast<std::size_t>(j_max + j);
        const auto dn = static_cast<std::size_t>(j_max - j);
        m.coefficients[up] = continued_fraction(a, q, b, j, +1, depth) * m.coefficients[up - 1];
        m.coefficients[dn] = continued_fraction(a, q, b, j, -1, depth) * m.coefficients[dn + 1];
    }
    double sum = 0.0;
    for (double c : m.coefficients) sum += c;
    for (double& c : m.coefficients) c /= sum;

    double w = 0.0;
    for (int j = -j_max; j <= j_max; ++j) w += (b + 2.0 * j) * m.coefficient(j);
    m.omega_t = 0.5 * drive.omega_rf * w;
    return m;
}

}  // namespace ionnoise
