#include "ionnoise/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"

namespace ionnoise {

using namespace constants;

double MaterialProperties::resistivity_at(double temperature) const {
    if (resistivity_table.empty()) return resistivity;
    const auto& t = resistivity_table;
    if (temperature <= t.front().first) return t.front().second;
    if (temperature >= t.back().first) return t.back().second;
    auto hi = std::lower_bound(t.begin(), t.end(), temperature,
                               [](const auto& p, double x) { return p.first < x; });
    auto lo = hi - 1;
    const double f = (temperature - lo->first) / (hi->first - lo->first);
    return lo->second + f * (hi->second - lo->second);
}

MaterialProperties gold() { return {"gold", 2.44e-8, {}}; }

bool blackbody_low_frequency(double omega, double temperature) {
    return hbar * omega < 0.1 * boltzmann * temperature;
}

double blackbody_spectrum(double omega, double temperature) {
    if (temperature < 0.0) throw DomainError("blackbody_spectrum: negative temperature");
    const double c3 = speed_of_light * speed_of_light * speed_of_light;
    return 2.0 * boltzmann * temperature * omega * omega / (3.0 * epsilon0 * pi * c3);
}

double skin_depth(double omega, double resistivity) {
    if (!(omega > 0.0) || !(resistivity > 0.0))
        throw DomainError("skin_depth: omega and resistivity must be positive");
    return std::sqrt(2.0 * epsilon0 * speed_of_light * speed_of_light * resistivity / omega);
}

double surface_blackbody_spectrum(double omega, double temperature, double d,
                                  const MaterialProperties& material, FieldAxis axis) {
    if (!(d > 0.0)) throw DomainError("surface_blackbody_spectrum: d must be positive");
    const double rho = material.resistivity_at(temperature);
    if (!(rho > 0.0)) throw DomainError("surface_blackbody_spectrum: resistivity must be positive");
    const double s = axis == FieldAxis::perpendicular ? 1.0 : 0.5;
    const double delta = skin_depth(omega, rho);
    return blackbody_spectrum(omega, temperature) +
           s * boltzmann * temperature * rho / (2.0 * pi * d * d * d) * (1.0 + d / delta);
}

ExternalNoiseFactor ExternalNoiseFactor::for_environment(Environment env) {
    const double ref = 2.0 * pi * 1e6;
    switch (env) {
        case Environment::outdoor: return {60.0, ref, 0.0};
        case Environment::city: return {80.0, ref, -3.0};
        case Environment::indoor: return {120.0, ref, -5.0};
    }
    return {};
}

double ExternalNoiseFactor::linear(double omega) const {
    const double base = std::pow(10.0, db / 10.0);
    if (exponent == 0.0) return base;
    if (!(omega > 0.0) || !(omega_ref > 0.0))
        throw DomainError("ExternalNoiseFactor: positive frequencies required for a sloped F_a");
    return base * std::pow(omega / omega_ref, exponent);
}

Environment parse_environment(const std::string& tag) {
    if (tag == "outdoor") return Environment::outdoor;
    if (tag == "city") return Environment::city;
    if (tag == "indoor") return Environment::indoor;
    throw InputError("unknown environment tag '" + tag + "' (expected outdoor, city or indoor)");
}

const char* to_string(Environment env) {
    switch (env) {
        case Environment::outdoor: return "outdoor";
        case Environment::city: return "city";
        case Environment::indoor: return "indoor";
    }
    return "";
}

double emi_spectrum(double omega, const ExternalNoiseFactor& fa) {
    return fa.linear(omega) * blackbody_spectrum(omega, reference_noise_temperature);
}

double pickup_voltage_spectrum(double omega, const ExternalNoiseFactor& fa, double loop_area,
                               double temperature) {
    if (loop_area < 0.0) throw DomainError("pickup_voltage_spectrum: negative loop area");
    const double c3 = speed_of_light * speed_of_light * speed_of_light;
    const double w2 = omega * omega;
    return fa.linear(omega) * 2.0 * mu0 * boltzmann * temperature * loop_area * loop_area * w2 * w2 /
           (3.0 * pi * c3);
}

double johnson_field_spectrum(double r_eff, double temperature, double d_char) {
    if (r_eff < 0.0) throw DomainError("johnson_field_spectrum: negative resistance");
    if (!(d_char > 0.0)) throw DomainError("johnson_field_spectrum: D must be positive");
    return 4.0 * boltzmann * temperature * r_eff / (d_char * d_char);
}

double johnson_equivalent_resistance(double s_v, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("johnson_equivalent_resistance: T must be positive");
    return s_v / (4.0 * boltzmann * temperature);
}

CircuitElement CircuitElement::resistor(double r) { return {Kind::resistor, r, 0.0, 0.0}; }
CircuitElement CircuitElement::capacitor(double c, double tan_theta) {
    return {Kind::capacitor, c, tan_theta, 0.0};
}
CircuitElement CircuitElement::inductor(double l, double q) { return {Kind::inductor, l, 0.0, q}; }

EquivalentResistance component_esr(const CircuitElement& element, double omega) {
    if (!(omega > 0.0)) throw DomainError("component_esr: omega must be positive");
    EquivalentResistance r;
    switch (element.kind) {
        case CircuitElement::Kind::resistor:
            if (element.value < 0.0) throw DomainError("component_esr: negative resistance");
            r.esr = element.value;
            r.epr = std::numeric_limits<double>::infinity();
            r.lossless = element.value == 0.0;
            return r;
        case CircuitElement::Kind::capacitor: {
            if (!(element.value > 0.0)) throw DomainError("component_esr: capacitance must be positive");
            if (element.loss_tangent < 0.0) throw DomainError("component_esr: negative loss tangent");
            if (element.loss_tangent == 0.0) {
                r.epr = std::numeric_limits<double>::infinity();
                r.lossless = true;
                return r;
            }
            const double x = 1.0 / (omega * element.value);
            r.epr = x / element.loss_tangent;
            // Re of EPR || 1/(i omega C)
            r.esr = r.epr / (1.0 + (r.epr / x) * (r.epr / x));
            return r;
        }
        case CircuitElement::Kind::inductor:
            if (!(element.value > 0.0)) throw DomainError("component_esr: inductance must be positive");
            if (!(element.quality > 0.0)) throw DomainError("component_esr: Q must be positive");
            r.esr = omega * element.value / element.quality;
            r.epr = std::numeric_limits<double>::infinity();
            return r;
    }
    return r;
}

double technical_noise_spectrum(double s_v_source, double attenuation_db, double d_char) {
    if (s_v_source < 0.0) throw DomainError("technical_noise_spectrum: negative source spectrum");
    if (!(d_char > 0.0)) throw DomainError("technical_noise_spectrum: D must be positive");
    if (std::isinf(attenuation_db) && attenuation_db > 0) return 0.0;
    return s_v_source * std::pow(10.0, -attenuation_db / 10.0) / (d_char * d_char);
}

double space_charge_per_electron(double tau_e, double d) {
    if (!(tau_e > 0.0) || !(d > 0.0)) throw DomainError("space_charge: tau_e and d must be positive");
    const double e = elementary_charge;
    return e * e * tau_e * tau_e * tau_e / (16.0 * epsilon0 * epsilon0 * d * d * d * d);
}

double space_charge_spectrum(double tau_e, double d, double rate, double omega) {
    if (rate < 0.0) throw DomainError("space_charge_spectrum: negative emission rate");
    (void)omega;  // white below 1/tau_e
    return rate * space_charge_per_electron(tau_e, d);
}

}  // namespace ionnoise
