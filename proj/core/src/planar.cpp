#include "ionnoise/planar.hpp"

#include <cmath>

namespace ionnoise {

double planar_geometric_factor(double x, double y, double d, FieldAxis axis) {
    const double r2 = x * x + y * y;
    const double den = std::pow(d * d + r2, 2.5);
    if (axis == FieldAxis::perpendicular) return (2.0 * d * d - r2) / den;
    return 3.0 * d * x / den;
}

double planar_transfer(double k, double d, FieldAxis axis) {
    const double g = k * k * std::exp(-2.0 * k * d);
    return axis == FieldAxis::perpendicular ? g : 0.5 * g;
}

double two_plate_transfer(double k, double d, FieldAxis axis) {
    // potential k-component sinh(k(2d - z)) / sinh(2kd) between plates at z = 0 and z = 2d:
    // perpendicular field k / (2 sinh kd), parallel i k_x / (2 cosh kd) at z = d
    const double kd = k * d;
    if (axis == FieldAxis::perpendicular) {
        if (kd < 1e-8) return 1.0 / (4.0 * d * d);
        if (kd > 350.0) return k * k * std::exp(-2.0 * kd);
        const double s = std::sinh(kd);
        return k * k / (4.0 * s * s);
    }
    if (kd > 350.0) return 0.5 * k * k * std::exp(-2.0 * kd);
    const double c = std::cosh(kd);
    return 0.5 * k * k / (4.0 * c * c);
}

const char* to_string(FieldAxis axis) {
    return axis == FieldAxis::perpendicular ? "perp" : "par";
}

}  // namespace ionnoise
