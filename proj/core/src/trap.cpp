#include "ionnoise/trap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"

namespace ionnoise {

namespace c = constants;

namespace {

// electron mass in amu; species presets are built from neutral atomic masses
constexpr double electron_mass_amu = 5.48579909065e-4;

double checked_spectrum(const Spectrum& s, double omega) {
    const double v = s(omega);
    if (!(v >= 0.0)) {
        std::ostringstream msg;
        msg << "spectral density must be non-negative, got " << v << " at omega=" << omega;
        throw DomainError(msg.str());
    }
    return v;
}

}  // namespace

IonSpecies IonSpecies::from_amu(std::string label, double mass_amu, int charge) {
    if (!(mass_amu > 0.0)) throw DomainError("ion mass must be positive");
    if (charge != 1) throw DomainError("only singly charged ions are supported");
    return IonSpecies{std::move(label), mass_amu * c::atomic_mass_unit, charge};
}

IonSpecies beryllium9() { return IonSpecies::from_amu("9Be+", 9.0121831 - electron_mass_amu); }
IonSpecies magnesium25() { return IonSpecies::from_amu("25Mg+", 24.98583696 - electron_mass_amu); }
IonSpecies calcium40() { return IonSpecies::from_amu("40Ca+", 39.962590863 - electron_mass_amu); }
IonSpecies strontium88() { return IonSpecies::from_amu("88Sr+", 87.9056125 - electron_mass_amu); }
IonSpecies ytterbium171() { return IonSpecies::from_amu("171Yb+", 170.9363315 - electron_mass_amu); }

DriveParameters DriveParameters::from_curvatures(const IonSpecies& ion, double omega_rf,
                                                 double phi_dc_curv, double phi_rf_curv) {
    if (!(omega_rf > 0.0)) throw DomainError("omega_rf must be positive");
    const double k = c::elementary_charge / (ion.mass * omega_rf * omega_rf);
    return DriveParameters{omega_rf, 4.0 * k * phi_dc_curv, 2.0 * k * phi_rf_curv};
}

void check_guard(const DriveParameters& drive, const StabilityGuard& guard) {
    if (!(drive.omega_rf > 0.0)) throw StabilityError("omega_rf must be positive");
    if (std::abs(drive.q) > guard.max_abs_q) {
        std::ostringstream msg;
        msg << "|q| = " << std::abs(drive.q) << " exceeds the stability guard " << guard.max_abs_q;
        throw StabilityError(msg.str());
    }
    if (std::abs(drive.a) > guard.max_abs_a) {
        std::ostringstream msg;
        msg << "|a| = " << std::abs(drive.a) << " exceeds the stability guard " << guard.max_abs_a;
        throw StabilityError(msg.str());
    }
}

double heating_rate(const IonSpecies& ion, double omega_t, double s_e) {
    if (!(omega_t > 0.0)) throw DomainError("heating_rate: omega_t must be positive");
    if (!(s_e >= 0.0)) throw DomainError("heating_rate: spectral density must be non-negative");
    const double e = c::elementary_charge;
    return e * e * s_e / (4.0 * ion.mass * c::hbar * omega_t);
}

double spectrum_from_rate(const IonSpecies& ion, double omega_t, double gamma) {
    if (!(omega_t > 0.0)) throw DomainError("spectrum_from_rate: omega_t must be positive");
    if (!(gamma >= 0.0)) throw DomainError("spectrum_from_rate: rate must be non-negative");
    const double e = c::elementary_charge;
    return gamma * 4.0 * ion.mass * c::hbar * omega_t / (e * e);
}

double heating_rate(const IonSpecies& ion, const ModeFunction& mode, const Spectrum& s_e, int order) {
    if (order < 0) throw DomainError("heating_rate: order must be >= 0");
    if (!(mode.omega_t > 0.0)) throw DomainError("heating_rate: mode has no secular motion");
    if (order == 0) {
        // pseudopotential limit at the secular frequency
        const double w = mode.secular_frequency();
        return heating_rate(ion, w, checked_spectrum(s_e, w));
    }
    double sum = 0.0;
    const int top = std::min(order, mode.j_max);
    for (int j = -top; j <= top; ++j) {
        const double cj = mode.coefficient(j);
        const double w = std::abs((0.5 * mode.b + j) * mode.omega_rf);
        sum += cj * cj * checked_spectrum(s_e, w);
    }
    return heating_rate(ion, mode.omega_t, sum);
}

double rf_null_displacement(const IonSpecies& ion, double omega_t, double e_static) {
    if (!(omega_t > 0.0)) throw DomainError("rf_null_displacement: omega_t must be positive");
    return c::elementary_charge * e_static / (ion.mass * omega_t * omega_t);
}

double rf_null_offset_heating(const IonSpecies& ion, const DriveParameters& drive, double e_static,
                              const Spectrum& s_v_rf, double v_rf, double phi_rf_curv) {
    if (!(v_rf > 0.0)) throw DomainError("rf_null_offset_heating: v_rf must be positive");
    const double w = secular_frequency(drive);
    const double dx = rf_null_displacement(ion, w, e_static);
    const double e = c::elementary_charge;
    const double sv = checked_spectrum(s_v_rf, drive.omega_rf + w) +
                      checked_spectrum(s_v_rf, std::abs(drive.omega_rf - w));
    return e * e * drive.q * drive.q * phi_rf_curv * phi_rf_curv * sv * dx * dx /
           (16.0 * ion.mass * c::hbar * w * v_rf * v_rf);
}

double micromotion_sideband_heating(const IonSpecies& ion, double omega_t, double q,
                                    double s_e_upper, double s_e_lower, double gradient_ratio) {
    if (!(s_e_upper >= 0.0) || !(s_e_lower >= 0.0))
        throw DomainError("micromotion_sideband_heating: spectral density must be non-negative");
    // the (q/2) cos(Omega t) coupling splits into two sidebands of amplitude q/4 each
    const double amp = 0.25 * q * (1.0 + gradient_ratio);
    return heating_rate(ion, omega_t, amp * amp * (s_e_upper + s_e_lower));
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("thermal_occupation: omega must be positive");
    if (!(temperature >= 0.0)) throw DomainError("thermal_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(c::hbar * omega / (c::boltzmann * temperature));
}

double nbar_evolution(double nbar0, double gamma, double nbar_bath, double t) {
    if (!(gamma >= 0.0)) throw DomainError("nbar_evolution: gamma must be >= 0");
    return nbar_bath + (nbar0 - nbar_bath) * std::exp(-gamma * t);
}

double motional_decoherence_rate(double gamma, double nbar_bath, int n0, int m0) {
    if (n0 < 0 || m0 < 0) throw DomainError("motional_decoherence_rate: Fock indices must be >= 0");
    if (n0 == m0) throw DomainError("motional_decoherence_rate: n0 == m0 is not a superposition");
    return 0.5 * gamma * (2.0 * nbar_bath + 1.0) * (n0 + m0);
}

double lamb_dicke(double k, const IonSpecies& ion, double omega_t) {
    if (!(k >= 0.0) || !(omega_t > 0.0)) throw DomainError("lamb_dicke: need k >= 0 and omega_t > 0");
    return k * std::sqrt(c::hbar / (2.0 * ion.mass * omega_t));
}

double recoil_frequency(double k, const IonSpecies& ion) {
    return c::hbar * k * k / (2.0 * ion.mass);
}

}  // namespace ionnoise
