#pragma once

#include <limits>

#include "ionnoise/planar.hpp"

namespace ionnoise {

// D(T) = D_t + D0 exp(-V_b / kT), m^2/s
double diffusion_constant(double d0, double v_b, double d_t, double temperature);

enum class DiffusionGeometry { planar, needle, patches };
enum class DiffusionKernel { analytic, numeric };

struct DiffusionModel {
    double d0 = 1e-7;      // m^2/s
    double v_b = 0.0;      // J
    double d_t = 0.0;      // m^2/s
    double mu = 0.0;       // C m; dipole contrast for patches
    double sigma_d = 0.0;  // m^-2
    DiffusionGeometry geometry = DiffusionGeometry::planar;
    double radius = 0.0;   // R_el (needle) or R_p (patches), m
    DiffusionKernel kernel = DiffusionKernel::analytic;

    void validate() const;
    double diffusivity(double temperature) const;
};

// Dimensionless I(omega~) for an ion at unit height over a disc of radius r_tilde
// (infinite for the full plane), by quadrature in Hankel space.
double diffusion_kernel_numeric(double omega_tilde, double r_tilde, FieldAxis axis,
                                double rel_tol = 1e-7);

enum class DiffusionRegime { low, high };
// Leading-order closed forms of I for the plane (r_tilde infinite) and small discs.
double diffusion_kernel_asymptote(double omega_tilde, double r_tilde, FieldAxis axis,
                                  DiffusionRegime regime);
// Picks the regime from omega~ (plane) or omega~ r~^2 (disc).
double diffusion_kernel_analytic(double omega_tilde, double r_tilde, FieldAxis axis);

// omega_d = D / d^2
double diffusion_crossover(double diffusivity, double d);

double diffusion_spectrum(const DiffusionModel& model, double omega, double temperature, double d,
                          FieldAxis axis);

}  // namespace ionnoise
