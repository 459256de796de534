#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace ionnoise {

// Single-sided S_E(omega) in V^2 m^-2 Hz^-1, omega in rad/s.
using Spectrum = std::function<double(double)>;

struct IonSpecies {
    std::string label;
    double mass = 0.0;  // kg
    int charge = 1;     // units of |e|

    static IonSpecies from_amu(std::string label, double mass_amu, int charge = 1);
};

IonSpecies beryllium9();
IonSpecies magnesium25();
IonSpecies calcium40();
IonSpecies strontium88();
IonSpecies ytterbium171();

struct DriveParameters {
    double omega_rf = 0.0;  // rad/s
    double a = 0.0;
    double q = 0.0;

    // a = 4 e phi_dc'' / (m Omega^2), q = 2 e phi_rf'' / (m Omega^2)
    static DriveParameters from_curvatures(const IonSpecies& ion, double omega_rf,
                                           double phi_dc_curv, double phi_rf_curv);
};

// Rejects drives outside the small-parameter regime. Default guard |q| <= 0.4.
struct StabilityGuard {
    double max_abs_q = 0.4;
    double max_abs_a = 0.4;
};
void check_guard(const DriveParameters& drive, const StabilityGuard& guard = {});

// u(t) = exp(i b Omega t / 2) sum_j C_2j exp(i j Omega t), with u(0) = 1 and u'(0) = i omega_t.
// omega_t differs from b Omega / 2 at first order in q (about (1 - q) b Omega / 2 for a = 0).
struct ModeFunction {
    double a = 0.0;
    double q = 0.0;
    double omega_rf = 0.0;
    double b = 0.0;
    double omega_t = 0.0;
    int j_max = 0;
    std::vector<double> coefficients;  // C_2j stored at index j + j_max

    double coefficient(int j) const;
    double secular_frequency() const { return 0.5 * b * omega_rf; }
    std::complex<double> value(double t) const;
    std::complex<double> derivative(double t) const;
    std::complex<double> second_derivative(double t) const;
    // max over one secular period of |u'' + (Omega^2/4)(a + 2q cos Omega t) u|,
    // relative to the size of the restoring term
    double residual(int samples = 512) const;
};

double secular_frequency_approx(const DriveParameters& drive);
double secular_frequency(const DriveParameters& drive);
ModeFunction mode_function(const DriveParameters& drive, int j_max = 5, double tol = 1e-10);

double heating_rate(const IonSpecies& ion, double omega_t, double s_e);
double spectrum_from_rate(const IonSpecies& ion, double omega_t, double gamma);
// order 0: e^2 S_E(w) / (4 m hbar w) at the secular frequency w = b Omega / 2.
// order >= 1: e^2 / (4 m hbar omega_t) sum_j C_2j^2 S_E(|b/2 + j| Omega), omega_t from u'(0).
double heating_rate(const IonSpecies& ion, const ModeFunction& mode, const Spectrum& s_e, int order);

double rf_null_displacement(const IonSpecies& ion, double omega_t, double e_static);
// s_v_rf gives V^2/Hz of RF amplitude noise, evaluated at Omega + omega_t and Omega - omega_t
double rf_null_offset_heating(const IonSpecies& ion, const DriveParameters& drive, double e_static,
                              const Spectrum& s_v_rf, double v_rf, double phi_rf_curv);
// Heating through the +-Omega micromotion sidebands of a field noise with spatial gradient.
// gradient_ratio = dx dE'/dE; 0 keeps only the direct coupling, 1 is the trap-electrode case.
double micromotion_sideband_heating(const IonSpecies& ion, double omega_t, double q,
                                    double s_e_upper, double s_e_lower, double gradient_ratio);

double thermal_occupation(double omega, double temperature);
double nbar_evolution(double nbar0, double gamma, double nbar_bath, double t);
double motional_decoherence_rate(double gamma, double nbar_bath, int n0, int m0);
double lamb_dicke(double k, const IonSpecies& ion, double omega_t);
double recoil_frequency(double k, const IonSpecies& ion);

}  // namespace ionnoise
