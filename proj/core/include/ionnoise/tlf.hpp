#pragma once

#include <limits>

#include "ionnoise/planar.hpp"

namespace ionnoise {

// Field noise of a homogeneous layer of fluctuating dipoles with areal density sigma_d:
// (3 pi / 2) sigma_d / ((4 pi eps0)^2 d^4) * S_mu perpendicular, half of that parallel.
double dipole_layer_field_spectrum(double sigma_d, double d, double s_mu, FieldAxis axis);

// mu^2 / (2 cosh^2(E / 2kT)) * T1 / (1 + omega^2 T1^2), C^2 m^2 / Hz
double tlf_single_spectrum(double mu, double e_tlf, double t1, double temperature, double omega);

struct BarrierDistribution {
    enum class Kind { uniform, power, lorentzian };
    Kind kind = Kind::uniform;
    double v_min = 0.0;  // J, support
    double v_max = 0.0;  // J, support (may be infinite for lorentzian)
    double power_gamma = 1.0;  // P ~ V^(gamma - 1)
    double v0 = 0.0;     // J, lorentzian centre
    double width = 0.0;  // J, lorentzian half width

    static BarrierDistribution uniform(double v_min, double v_max);
    static BarrierDistribution power(double v_min, double v_max, double gamma);
    static BarrierDistribution lorentzian(double v0, double width, double v_min = 0.0,
                                          double v_max = std::numeric_limits<double>::infinity());

    void validate() const;
    double pdf(double v) const;  // normalised over [v_min, v_max]
};

struct TunnelingParameters {
    double delta_max = 0.0;   // J, asymmetry range [-delta_max, delta_max]
    double lambda_min = 0.0;  // flat tunnelling-parameter range
    double lambda_max = 0.0;
    double t1_span = 1e6;     // T1 integrated over [T_min, t1_span T_min]
    double xi_l = 0.0;        // J, deformation potentials
    double xi_t = 0.0;
    double v_l = 0.0;         // m/s, sound velocities
    double v_t = 0.0;
    double density = 0.0;     // kg/m^3

    double p0() const;
    // symmetric-well relaxation time T_min(E)
    double t_min(double e_tlf, double temperature) const;
};

struct TLFEnsemble {
    enum class Process { thermal, tunneling };
    double mu = 0.0;       // C m
    double sigma_d = 0.0;  // m^-2
    BarrierDistribution barriers;
    double tau0 = 1e-13;   // s
    // Energy cap; 0 selects the E_max << kT limit for the thermal process.
    double e_max = 0.0;    // J
    Process process = Process::thermal;
    TunnelingParameters tunneling;

    void validate() const;
};

// omega tau0 bounds exp(-V_max/kT) and exp(-V_min/kT) of the thermal closed form.
struct ValidityWindow {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double omega_tau0) const { return omega_tau0 > lower && omega_tau0 < upper; }
};
ValidityWindow tlf_validity_window(const TLFEnsemble& ensemble, double temperature);

// Averaged dipole spectrum over P(E, T1), C^2 m^2 / Hz.
double tlf_ensemble_spectrum(const TLFEnsemble& ensemble, double omega, double temperature,
                             double rel_tol = 1e-8);
double tlf_field_spectrum(const TLFEnsemble& ensemble, double omega, double temperature, double d,
                          FieldAxis axis);

// Closed forms: (1/dV)(pi k T / 4 omega) mu^2 and P0 (pi k T / 4 omega) mu^2.
double tlf_thermal_closed_form(double mu, double delta_v, double omega, double temperature);
double tlf_tunneling_closed_form(double mu, double p0, double omega, double temperature);

// Dominant-barrier approximation mu^2 (pi k T / 4 omega) P(-kT ln(omega tau0)).
double dutta_horn_approximation(const TLFEnsemble& ensemble, double omega, double temperature);

struct DuttaHornResult {
    double spectrum = 0.0;        // averaged S_mu
    double alpha = 0.0;           // 1 - (dlnS/dlnT - 1) / ln(omega tau0)
    double alpha_direct = 0.0;    // -dlnS/dlnomega
    double gamma = 0.0;           // dlnS/dlnT
};
DuttaHornResult dutta_horn(const TLFEnsemble& ensemble, double omega, double temperature,
                           double rel_step = 1e-3);

}  // namespace ionnoise
