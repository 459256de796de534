#include "ionnoise/geometry.hpp"

#include <cmath>
#include <sstream>

#include "ionnoise/errors.hpp"

namespace ionnoise {

GeometryModel GeometryModel::plates(double s) { return {Kind::plates, s, 0.0}; }
GeometryModel GeometryModel::spheres(double r_el, double s) { return {Kind::spheres, s, r_el}; }
GeometryModel GeometryModel::needles(double r_el, double d) { return {Kind::needles, 2.0 * d, r_el}; }

GeometryModel GeometryModel::at_distance(double d) const {
    GeometryModel g = *this;
    g.separation = 2.0 * d;
    return g;
}

void GeometryModel::validate() const {
    if (!(separation > 0.0)) throw DomainError("geometry: separation must be positive");
    if (kind != Kind::plates && !(r_el > 0.0)) throw DomainError("geometry: electrode radius must be positive");
}

bool GeometryModel::valid_approximation() const {
    return kind != Kind::spheres || separation >= 10.0 * r_el;
}

const char* to_string(GeometryModel::Kind kind) {
    switch (kind) {
        case GeometryModel::Kind::plates: return "plates";
        case GeometryModel::Kind::spheres: return "spheres";
        case GeometryModel::Kind::needles: return "needles";
    }
    return "";
}

double needle_v0(double r_el, double d) { return std::sqrt(1.0 / (1.0 + r_el / d)); }

CharacteristicLength characteristic_length(const GeometryModel& geom) {
    geom.validate();
    const double d = geom.d();
    CharacteristicLength out;
    switch (geom.kind) {
        case GeometryModel::Kind::plates: out.d_char = 2.0 * d; break;
        case GeometryModel::Kind::spheres:
            out.d_char = 2.0 * d * d / geom.r_el;
            if (!geom.valid_approximation()) {
                std::ostringstream msg;
                msg << "spheres: point-charge approximation needs s >> R_el (s/R_el = "
                    << geom.separation / geom.r_el << ")";
                out.warnings.push_back(msg.str());
            }
            break;
        case GeometryModel::Kind::needles: {
            const double v0 = needle_v0(geom.r_el, d);
            out.d_char = d * std::log((1.0 + v0) / (1.0 - v0)) / v0;
            break;
        }
    }
    out.kappa = 2.0 * d / out.d_char;
    return out;
}

double log_derivative(const std::function<double(double)>& f, double x, double rel_step) {
    if (!(x > 0.0)) throw DomainError("log_derivative: x must be positive");
    if (!(rel_step > 0.0)) throw DomainError("log_derivative: step must be positive");
    const double up = f(x * std::exp(rel_step));
    const double dn = f(x * std::exp(-rel_step));
    if (!(up > 0.0) || !(dn > 0.0)) throw DomainError("log_derivative: non-positive value in stencil");
    return (std::log(up) - std::log(dn)) / (2.0 * rel_step);
}

double local_beta(const std::function<double(double)>& spectrum_vs_d, double d, double rel_step) {
    return -log_derivative(spectrum_vs_d, d, rel_step);
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw InputError("fit_power_law: at least three samples required");
    const double n = static_cast<double>(samples.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, s] : samples) {
        if (!(x > 0.0) || !(s > 0.0)) throw InputError("fit_power_law: samples must be positive");
        sx += std::log(x);
        sy += std::log(s);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, s] : samples) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(s) - my);
    }
    if (!(sxx > 0.0)) throw InputError("fit_power_law: abscissae must not all coincide");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (const auto& [x, s] : samples) {
        const double r = std::log(s) - intercept - fit.exponent * std::log(x);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.uncertainty = samples.size() > 2 ? std::sqrt(ss / (n - 2.0) / sxx) : 0.0;
    return fit;
}

}  // namespace ionnoise
