#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ionnoise/planar.hpp"

namespace ionnoise {

struct MaterialProperties {
    std::string label;
    double resistivity = 0.0;  // Ohm m at the reference temperature
    // optional (T [K], rho [Ohm m]) table, linearly interpolated, clamped at the ends
    std::vector<std::pair<double, double>> resistivity_table;

    double resistivity_at(double temperature) const;
};

MaterialProperties gold();

// True when hbar omega << k T holds with margin (hbar omega < 0.1 k T).
bool blackbody_low_frequency(double omega, double temperature);

double blackbody_spectrum(double omega, double temperature);
double skin_depth(double omega, double resistivity);
double surface_blackbody_spectrum(double omega, double temperature, double d,
                                  const MaterialProperties& material, FieldAxis axis);

enum class Environment { outdoor, city, indoor };

// F_a(omega) = 10^(db/10) (omega / omega_ref)^exponent, relative to 300 K black body.
struct ExternalNoiseFactor {
    double db = 0.0;
    double omega_ref = 0.0;
    double exponent = 0.0;

    static ExternalNoiseFactor for_environment(Environment env);
    double linear(double omega) const;
};

Environment parse_environment(const std::string& tag);
const char* to_string(Environment env);

inline constexpr double reference_noise_temperature = 300.0;

double emi_spectrum(double omega, const ExternalNoiseFactor& fa);
double pickup_voltage_spectrum(double omega, const ExternalNoiseFactor& fa, double loop_area,
                               double temperature = reference_noise_temperature);
double johnson_field_spectrum(double r_eff, double temperature, double d_char);
double johnson_equivalent_resistance(double s_v, double temperature);

struct CircuitElement {
    enum class Kind { resistor, capacitor, inductor };
    Kind kind = Kind::resistor;
    double value = 0.0;        // Ohm, F or H
    double loss_tangent = 0.0; // capacitor
    double quality = 0.0;      // inductor

    static CircuitElement resistor(double r);
    static CircuitElement capacitor(double c, double tan_theta);
    static CircuitElement inductor(double l, double q);
};

struct EquivalentResistance {
    double epr = 0.0;  // parallel loss resistance (capacitor); infinite when lossless
    double esr = 0.0;  // series-equivalent resistance
    bool lossless = false;
};

EquivalentResistance component_esr(const CircuitElement& element, double omega);

// s_v_source in V^2/Hz, attenuation in dB at the evaluation frequency
double technical_noise_spectrum(double s_v_source, double attenuation_db, double d_char);

// Single electron, Gaussian Coulomb pulse of width tau_e at mean distance d.
double space_charge_per_electron(double tau_e, double d);
double space_charge_spectrum(double tau_e, double d, double rate, double omega);

}  // namespace ionnoise
