#pragma once

#include "ionnoise/planar.hpp"

namespace ionnoise {

enum class PatchCorrelation { exponential, step };

// Uncorrelated patches with voltage spectrum s_v. The two-plate and planar numeric paths use
// C_V(rho) = coverage * s_v * c(rho / r_c); the small-patch closed form uses area directly.
struct PatchModel {
    double s_v = 0.0;       // V^2/Hz per patch
    double area = 0.0;      // m^2
    double coverage = 1.0;  // sigma_p
    PatchCorrelation correlation = PatchCorrelation::exponential;
    double r_c = 0.0;       // m

    void validate() const;
};

// Effective patch area of the correlation kernel: 2 pi r_c^2 (exponential), pi r_c^2 (step).
double effective_patch_area(PatchCorrelation kind, double r_c);

// Fourier transform of c(rho) over the plane.
double patch_correlation_transform(PatchCorrelation kind, double r_c, double k);

// s_eta 3 sigma_p A_p S_V / (16 pi d^4); warns through small_patch_valid when r_c > d/3.
double patch_spectrum_small(const PatchModel& model, double d, FieldAxis axis);
bool small_patch_valid(const PatchModel& model, double d);

// Ion midway between two plates separated by 2d, patches on one plate.
double patch_spectrum_two_plates(const PatchModel& model, double d, FieldAxis axis,
                                 double rel_tol = 1e-8);

// Single infinite plane; finite only for r_c not much larger than d.
double patch_spectrum_planar(const PatchModel& model, double d, FieldAxis axis,
                             double rel_tol = 1e-8);

}  // namespace ionnoise
