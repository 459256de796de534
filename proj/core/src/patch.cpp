#include "ionnoise/patch.hpp"

#include <algorithm>
#include <cmath>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"
#include "quadrature.hpp"

namespace ionnoise {

using constants::pi;

void PatchModel::validate() const {
    if (s_v < 0.0) throw DomainError("PatchModel: S_V must be non-negative");
    if (coverage < 0.0 || coverage > 1.0) throw DomainError("PatchModel: coverage must lie in [0, 1]");
    if (area < 0.0) throw DomainError("PatchModel: patch area must be non-negative");
    if (r_c < 0.0) throw DomainError("PatchModel: r_c must be non-negative");
}

double effective_patch_area(PatchCorrelation kind, double r_c) {
    return kind == PatchCorrelation::exponential ? 2.0 * pi * r_c * r_c : pi * r_c * r_c;
}

double patch_correlation_transform(PatchCorrelation kind, double r_c, double k) {
    const double x = k * r_c;
    if (kind == PatchCorrelation::exponential) return 2.0 * pi * r_c * r_c / std::pow(1.0 + x * x, 1.5);
    if (x < 1e-8) return pi * r_c * r_c;
    return 2.0 * pi * r_c * std::cyl_bessel_j(1.0, x) / k;
}

double patch_spectrum_small(const PatchModel& model, double d, FieldAxis axis) {
    model.validate();
    if (!(model.area > 0.0)) throw DomainError("patch_spectrum_small: patch area must be positive");
    if (!(d > 0.0)) throw DomainError("patch_spectrum_small: d must be positive");
    const double s = axis == FieldAxis::perpendicular ? 1.0 : 0.5;
    return s * 3.0 * model.coverage * model.area * model.s_v / (16.0 * pi * d * d * d * d);
}

bool small_patch_valid(const PatchModel& model, double d) { return model.r_c <= d / 3.0; }

namespace {

template <class Transfer>
double fourier_patch(const PatchModel& model, double d, double rel_tol, Transfer transfer) {
    model.validate();
    if (!(d > 0.0) || !(model.r_c > 0.0))
        throw DomainError("patch spectrum: d and r_c must be positive");
    const double r_c = model.r_c;
    const double k_hi = 60.0 / d;
    const double k_knee = std::min(1.0 / d, 1.0 / r_c);
    const double k_lo = 1e-7 * k_knee;
    auto f = [&](double k) {
        return k * transfer(k) * patch_correlation_transform(model.correlation, r_c, k) / (2.0 * pi);
    };
    double total = detail::integrate_pieces(f, {0.0, k_lo}, rel_tol, "patch spectrum");
    auto edges = detail::log_edges(k_lo, std::min(k_knee, k_hi), 24);
    if (k_knee < k_hi) {
        const double width = model.correlation == PatchCorrelation::step ? pi / r_c : k_hi;
        const int n = std::clamp(static_cast<int>((k_hi - k_knee) / width) + 1, 8, 40000);
        const auto lin = detail::linear_edges(k_knee, k_hi, n);
        edges.insert(edges.end(), lin.begin() + 1, lin.end());
    }
    total += detail::integrate_pieces(f, edges, rel_tol, "patch spectrum");
    return model.coverage * model.s_v * total;
}

}  // namespace

double patch_spectrum_two_plates(const PatchModel& model, double d, FieldAxis axis, double rel_tol) {
    return fourier_patch(model, d, rel_tol, [&](double k) { return two_plate_transfer(k, d, axis); });
}

double patch_spectrum_planar(const PatchModel& model, double d, FieldAxis axis, double rel_tol) {
    return fourier_patch(model, d, rel_tol, [&](double k) { return planar_transfer(k, d, axis); });
}

}  // namespace ionnoise
