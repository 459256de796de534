#include "ionnoise/diffusion.hpp"


#include <algorithm>
#include <cmath>
#include <vector>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"
#include "quadrature.hpp"

namespace ionnoise {

using namespace constants;

double diffusion_constant(double d0, double v_b, double d_t, double temperature) {
    if (d0 < 0.0 || d_t < 0.0 || v_b < 0.0) throw DomainError("diffusion_constant: negative parameter");
    if (temperature <= 0.0) return d_t;
    return d_t + d0 * std::exp(-v_b / (boltzmann * temperature));
}

void DiffusionModel::validate() const {
    if (d0 < 0.0 || v_b < 0.0 || d_t < 0.0 || mu < 0.0 || sigma_d < 0.0 || radius < 0.0)
        throw DomainError("DiffusionModel: parameters must be non-negative");
    if (geometry != DiffusionGeometry::planar && !(radius > 0.0))
        throw DomainError("DiffusionModel: needle and patch geometries need a positive radius");
}

double DiffusionModel::diffusivity(double temperature) const {
    return diffusion_constant(d0, v_b, d_t, temperature);
}

namespace {

// Radial profiles at unit height: perpendicular (2 - r^2)/(1 + r^2)^(5/2) with J0,
// parallel 3 r/(1 + r^2)^(5/2) with J1.
double profile(double r, FieldAxis axis) {
    const double den = std::pow(1.0 + r * r, 2.5);
    return axis == FieldAxis::perpendicular ? (2.0 - r * r) / den : 3.0 * r / den;
}

class DiscTransform {
public:
    DiscTransform(double r_tilde, FieldAxis axis) : r_(r_tilde), axis_(axis) {}

    // |g(k)|^2 averaged over the direction of k
    double squared(double k) const {
        if (std::isinf(r_)) {
            const double g = 2.0 * pi * k * std::exp(-k);
            return axis_ == FieldAxis::perpendicular ? g * g : 0.5 * g * g;
        }
        const int n = std::max(48, static_cast<int>(1.3 * k * r_) + 48);
        const auto& rule = nodes(n);
        double s = 0.0;
        const double half = 0.5 * r_;
        for (std::size_t i = 0; i < rule.first.size(); ++i) {
            const double r = half * (1.0 + rule.first[i]);
            const double j = axis_ == FieldAxis::perpendicular ? std::cyl_bessel_j(0.0, k * r)
                                                               : std::cyl_bessel_j(1.0, k * r);
            s += rule.second[i] * profile(r, axis_) * j * r;
        }
        const double g = 2.0 * pi * half * s;
        return axis_ == FieldAxis::perpendicular ? g * g : 0.5 * g * g;
    }

private:
    // Gauss-Legendre rule on [-1, 1] with at least n nodes, cached by size class.
    const std::pair<std::vector<double>, std::vector<double>>& nodes(int n) const {
        int size = 64;
        while (size < n) size *= 2;
        auto it = std::find_if(cache_.begin(), cache_.end(),
                               [size](const auto& c) { return c.first == size; });
        if (it != cache_.end()) return it->second;
        cache_.push_back({size, legendre(size)});
        return cache_.back().second;
    }

    static std::pair<std::vector<double>, std::vector<double>> legendre(int n) {
        std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[static_cast<std::size_t>(i)] = z;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        return {x, w};
    }

    double r_;
    FieldAxis axis_;
    mutable std::vector<std::pair<int, std::pair<std::vector<double>, std::vector<double>>>> cache_;
};

}  // namespace

double diffusion_kernel_numeric(double omega_tilde, double r_tilde, FieldAxis axis, double rel_tol) {
    if (!(omega_tilde > 0.0)) throw DomainError("diffusion kernel: omega~ must be positive");
    if (!(r_tilde > 0.0)) throw DomainError("diffusion kernel: R~ must be positive");
    const DiscTransform g(r_tilde, axis);
    // I = (1/pi^2) int k^3 |g(k)|^2 / (k^4 + omega~^2) dk
    auto f = [&](double k) { return k * k * k * g.squared(k) / (k * k * k * k + omega_tilde * omega_tilde); };
    const double k_scale = std::sqrt(omega_tilde);
    double k_hi;
    if (std::isinf(r_tilde)) {
        k_hi = 80.0 + 10.0 * k_scale;
    } else {
        k_hi = 100.0 * std::max({1.0, 1.0 / r_tilde, k_scale});
    }
    const double k_lo = 1e-6 * std::min({1.0, k_scale, std::isinf(r_tilde) ? 1.0 : 1.0 / r_tilde});
    auto edges = detail::log_edges(k_lo, k_hi, 60);
    edges.insert(edges.begin(), 0.0);
    const double integral = detail::integrate_pieces(f, edges, rel_tol, "diffusion kernel");
    return integral / (pi * pi);
}

double diffusion_kernel_asymptote(double omega_tilde, double r_tilde, FieldAxis axis,
                                  DiffusionRegime regime) {
    const bool perp = axis == FieldAxis::perpendicular;
    if (std::isinf(r_tilde)) {
        const double v = regime == DiffusionRegime::low ? 1.0 : 7.5 / (omega_tilde * omega_tilde);
        return perp ? v : 0.5 * v;
    }
    const double r = r_tilde;
    if (regime == DiffusionRegime::low) {
        if (perp) return -4.0 * std::pow(r, 4) * std::log(std::sqrt(omega_tilde) * r);
        return 0.75 * std::pow(r, 6);
    }
    const double w32 = std::pow(omega_tilde, 1.5);
    return perp ? std::sqrt(32.0) * r / w32 : 9.0 * r * r * r / (std::sqrt(2.0) * w32);
}

double diffusion_kernel_analytic(double omega_tilde, double r_tilde, FieldAxis axis) {
    const double x = std::isinf(r_tilde) ? omega_tilde : omega_tilde * r_tilde * r_tilde;
    return diffusion_kernel_asymptote(omega_tilde, r_tilde, axis,
                                      x >= 1.0 ? DiffusionRegime::high : DiffusionRegime::low);
}

double diffusion_crossover(double diffusivity, double d) { return diffusivity / (d * d); }

double diffusion_spectrum(const DiffusionModel& model, double omega, double temperature, double d,
                          FieldAxis axis) {
    model.validate();
    if (!(omega > 0.0) || !(d > 0.0)) throw DomainError("diffusion_spectrum: omega and d must be positive");
    const double dif = model.diffusivity(temperature);
    if (!(dif > 0.0)) throw DomainError("diffusion_spectrum: diffusion constant vanishes");
    const double omega_tilde = omega / diffusion_crossover(dif, d);
    double r_tilde = std::numeric_limits<double>::infinity();
    double count = 1.0;
    if (model.geometry != DiffusionGeometry::planar) r_tilde = model.radius / d;
    if (model.geometry == DiffusionGeometry::patches) count = 1.0 / (r_tilde * r_tilde);
    const double kernel = model.kernel == DiffusionKernel::numeric
                              ? diffusion_kernel_numeric(omega_tilde, r_tilde, axis)
                              : diffusion_kernel_analytic(omega_tilde, r_tilde, axis);
    const double pre = model.mu * model.mu * model.sigma_d / (8.0 * pi * epsilon0 * epsilon0 * d * d * dif);
    return count * pre * std::max(0.0, kernel);
}

}  // namespace ionnoise
