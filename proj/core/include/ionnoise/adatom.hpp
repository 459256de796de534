#pragma once

#include <memory>
#include <vector>

#include "ionnoise/planar.hpp"

namespace ionnoise {

// U(z) = w/(w-3) U0 [ (3/w) exp(w (1 - z/z0)) - (z0/z)^3 ],  mu(z) = mu0 (z0/z)^4
struct AdatomModel {
    double u0 = 0.0;        // J
    double z0 = 3e-10;      // m
    double w = 5.8;
    double mass = 0.0;      // kg
    double mu0 = 0.0;       // C m, induced dipole at z0
    double density = 0.0;   // kg/m^3, substrate
    double sound_velocity = 0.0;  // m/s
    double lattice_constant = 4.08e-10;  // m, sets the Debye cutoff
    bool debye_cutoff = true;
    double sigma_d = 0.0;   // m^-2
    double gamma0_override = 0.0;  // 1/s; > 0 rescales every rate so Gamma_{1->0}(T=0) matches
    int grid_points = 4000;
    double z_min_factor = 0.3;
    double z_max_factor = 10.0;

    void validate() const;
    double potential(double z) const;
    double potential_derivative(double z) const;
    double dipole(double z) const;
};

// Harmonic estimate zeta sqrt(U0 / (m z0^2)), zeta = sqrt(3 (w^2 - 4w) / (w - 3)), rad/s.
double adatom_nu10_harmonic(const AdatomModel& model);

// Gamma0 ~ nu10^4 m_ad / (4 pi v^3 rho) with the bulk phonon density of states.
double adatom_gamma0_estimate(double nu10, double mass, double sound_velocity, double density);

double debye_frequency(double sound_velocity, double lattice_constant);

struct AdatomRates {
    double down = 0.0;  // Gamma_{n -> m}, n > m
    double up = 0.0;    // Gamma_{m -> n}
};

// n_levels value selecting every bound state of the potential
inline constexpr int all_bound_levels = 0;

class AdatomSolver {
public:
    AdatomSolver(const AdatomModel& model, int n_levels);

    int levels() const { return static_cast<int>(energies_.size()); }
    int bound_states() const { return bound_count_; }
    const std::vector<double>& energies() const { return energies_; }  // J
    const std::vector<double>& dipoles() const { return dipoles_; }    // <n|mu|n>
    double nu(int n, int m) const;  // (E_n - E_m) / hbar
    double nu10() const { return nu(1, 0); }
    double gamma0() const;          // Gamma_{1->0}(T = 0)
    double inner_wall() const { return z_lo_; }  // m, start of the grid

    AdatomRates rates(int n, int m, double temperature) const;
    std::vector<double> populations(double temperature) const;
    // S_mu(omega) = 2 Re[ mu^T (i omega - W)^-1 (diag p - p p^T) mu ], C^2 m^2 / Hz
    double dipole_spectrum(double omega, double temperature) const;
    // Levels 0 and 1 only, exact two-state result
    double two_level_spectrum(double omega, double temperature) const;
    // (mu0 - mu1)^2 2 Gamma0 / (omega^2 + Gamma0^2) exp(-hbar nu10 / kT)
    double two_level_low_temperature(double omega, double temperature) const;

private:
    double raw_coupling(int n, int m) const;  // |<n|U'|m>|^2 times the substrate factor
    double coupling(int n, int m) const;
    AdatomModel model_;
    std::vector<double> energies_;
    std::vector<double> dipoles_;
    std::vector<double> couplings_;  // levels x levels
    int bound_count_ = 0;
    double z_lo_ = 0.0;
    double scale_ = 1.0;
};

AdatomRates adatom_rates(const AdatomModel& model, int n, int m, double temperature);
double adatom_spectrum(const AdatomModel& model, double omega, double temperature, int n_levels,
                       double d, FieldAxis axis);

}  // namespace ionnoise
