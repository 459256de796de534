#pragma once

#include <vector>

#include "ionnoise/trap.hpp"

namespace ionnoise {

enum class ModeAxis { axial, radial_x, radial_y };

struct NormalMode {
    ModeAxis axis = ModeAxis::axial;
    double omega = 0.0;           // rad/s
    std::vector<double> vector;   // participation c_k(i) along the mode axis
};

// Axial modes first, then radial x, then radial y; each block sorted by frequency.
struct ModeStructure {
    std::vector<double> positions;  // m, along the chain axis
    std::vector<NormalMode> modes;

    std::vector<double> mode_freqs() const;
    const NormalMode& axial_com() const;
    const NormalMode& radial_com(ModeAxis axis = ModeAxis::radial_x) const;
};

struct SpatialCorrelation {
    enum class Kind { fully_correlated, uncorrelated, exponential };
    Kind kind = Kind::uncorrelated;
    double r_c = 0.0;  // m, exponential only

    static SpatialCorrelation fully_correlated() { return {Kind::fully_correlated, 0.0}; }
    static SpatialCorrelation uncorrelated() { return {Kind::uncorrelated, 0.0}; }
    static SpatialCorrelation exponential(double r_c);

    double coefficient(double separation) const;
};

// Length scale (e^2 / (4 pi eps0 m omega^2))^(1/3).
double chain_length_scale(const IonSpecies& ion, double omega_ax);

std::vector<double> chain_equilibrium(int n_ions, double omega_ax, const IonSpecies& ion,
                                      double tol = 1e-12, int max_iter = 200);

// Max |force| in units of m omega_ax^2 * length scale.
double chain_force_residual(const std::vector<double>& positions, double omega_ax,
                            const IonSpecies& ion);

ModeStructure normal_modes(const std::vector<double>& positions, const IonSpecies& ion,
                           double omega_ax, double omega_rad);

// Gamma_k = e^2 / (4 m hbar omega_k) sum_ij c_k(i) c_k(j) rho_ij S_E(omega_k)
std::vector<double> mode_heating_rates(const ModeStructure& modes,
                                       const SpatialCorrelation& correlation,
                                       const Spectrum& base_spectrum, const IonSpecies& ion);

// Planar surface with exponential patch correlation of length r_c. Returns the normalised
// field correlation S12/S11 between two ions at separation x0 and height d.
double ion_field_correlation(double x0, double d, double r_c);

// Antisymmetric over symmetric field noise, (1 - c) / (1 + c).
double two_ion_correlation_ratio(double x0, double d, double r_c);

}  // namespace ionnoise
