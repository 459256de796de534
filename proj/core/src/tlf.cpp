#include "ionnoise/tlf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"
#include "quadrature.hpp"

namespace ionnoise {

using namespace constants;

double dipole_layer_field_spectrum(double sigma_d, double d, double s_mu, FieldAxis axis) {
    if (!(d > 0.0)) throw DomainError("dipole layer: d must be positive");
    const double k = 4.0 * pi * epsilon0;
    const double perp = 1.5 * pi * sigma_d / (k * k * d * d * d * d) * s_mu;
    return axis == FieldAxis::perpendicular ? perp : 0.5 * perp;
}

double tlf_single_spectrum(double mu, double e_tlf, double t1, double temperature, double omega) {
    if (!(t1 > 0.0)) throw DomainError("tlf_single_spectrum: T1 must be positive");
    double occupation;
    if (temperature <= 0.0) {
        occupation = e_tlf == 0.0 ? 1.0 : 0.0;
    } else {
        const double c = std::cosh(e_tlf / (2.0 * boltzmann * temperature));
        occupation = std::isinf(c) ? 0.0 : 1.0 / (c * c);
    }
    return 0.5 * mu * mu * occupation * t1 / (1.0 + omega * omega * t1 * t1);
}

BarrierDistribution BarrierDistribution::uniform(double v_min, double v_max) {
    BarrierDistribution b;
    b.kind = Kind::uniform;
    b.v_min = v_min;
    b.v_max = v_max;
    return b;
}

BarrierDistribution BarrierDistribution::power(double v_min, double v_max, double gamma) {
    BarrierDistribution b = uniform(v_min, v_max);
    b.kind = Kind::power;
    b.power_gamma = gamma;
    return b;
}

BarrierDistribution BarrierDistribution::lorentzian(double v0, double width, double v_min, double v_max) {
    BarrierDistribution b = uniform(v_min, v_max);
    b.kind = Kind::lorentzian;
    b.v0 = v0;
    b.width = width;
    return b;
}

void BarrierDistribution::validate() const {
    if (!(v_max > v_min)) throw DomainError("BarrierDistribution: empty support, need v_max > v_min");
    if (v_min < 0.0) throw DomainError("BarrierDistribution: barriers must be non-negative");
    if (kind != Kind::lorentzian && std::isinf(v_max))
        throw DomainError("BarrierDistribution: finite v_max required");
    if (kind == Kind::power && v_min == 0.0 && power_gamma <= 0.0)
        throw DomainError("BarrierDistribution: power law not normalisable from zero for gamma <= 0");
    if (kind == Kind::lorentzian && !(width > 0.0))
        throw DomainError("BarrierDistribution: lorentzian width must be positive");
}

double BarrierDistribution::pdf(double v) const {
    if (v < v_min || v > v_max) return 0.0;
    switch (kind) {
        case Kind::uniform: return 1.0 / (v_max - v_min);
        case Kind::power: {
            const double g = power_gamma;
            const double norm = std::abs(g) < 1e-12 ? std::log(v_max / v_min)
                                                    : (std::pow(v_max, g) - std::pow(v_min, g)) / g;
            return std::pow(v, g - 1.0) / norm;
        }
        case Kind::lorentzian: {
            const double norm =
                (std::atan((v_max - v0) / width) - std::atan((v_min - v0) / width)) / pi;
            const double x = v - v0;
            return width / (pi * (width * width + x * x)) / norm;
        }
    }
    return 0.0;
}

double TunnelingParameters::p0() const {
    return 1.0 / (delta_max * (lambda_max - lambda_min));
}

double TunnelingParameters::t_min(double e_tlf, double temperature) const {
    const double h4 = hbar * hbar * hbar * hbar;
    const double coupling = xi_l * xi_l / std::pow(v_l, 5) + 2.0 * xi_t * xi_t / std::pow(v_t, 5);
    const double x = e_tlf / (2.0 * boltzmann * temperature);
    const double coth = x > 1e-8 ? 1.0 / std::tanh(x) : 1.0 / x;
    const double rate = e_tlf * e_tlf * e_tlf / (2.0 * pi * density * h4) * coupling * coth;
    return 1.0 / rate;
}

void TLFEnsemble::validate() const {
    if (!(tau0 > 0.0)) throw DomainError("TLFEnsemble: tau0 must be positive");
    if (sigma_d < 0.0) throw DomainError("TLFEnsemble: sigma_d must be non-negative");
    if (e_max < 0.0) throw DomainError("TLFEnsemble: e_max must be non-negative");
    if (process == Process::thermal) {
        barriers.validate();
    } else {
        const auto& t = tunneling;
        if (!(t.delta_max > 0.0) || !(t.lambda_max > t.lambda_min) || !(t.t1_span > 1.0) ||
            !(t.v_l > 0.0) || !(t.v_t > 0.0) || !(t.density > 0.0) || (t.xi_l == 0.0 && t.xi_t == 0.0))
            throw DomainError("TLFEnsemble: incomplete tunnelling parameters");
        if (!(e_max > 0.0)) throw DomainError("TLFEnsemble: tunnelling ensemble needs e_max > 0");
    }
}

ValidityWindow tlf_validity_window(const TLFEnsemble& ensemble, double temperature) {
    ensemble.barriers.validate();
    if (!(temperature > 0.0)) throw DomainError("tlf_validity_window: T must be positive");
    const double kt = boltzmann * temperature;
    return {std::exp(-ensemble.barriers.v_max / kt), std::exp(-ensemble.barriers.v_min / kt)};
}

namespace {

// (1/E_max) int_0^E_max sech^2(E / 2kT) dE
double energy_factor(double e_max, double kt) {
    if (e_max == 0.0) return 1.0;
    const double x = e_max / (2.0 * kt);
    return std::tanh(x) / x;
}

double thermal_spectrum(const TLFEnsemble& ens, double omega, double temperature, double rel_tol) {
    const double kt = boltzmann * temperature;
    const auto& p = ens.barriers;
    // u = ln(omega T1) = ln(omega tau0) + V / kT
    const double l0 = std::log(omega * ens.tau0);
    double u_lo = std::max(l0 + p.v_min / kt, -60.0);
    double u_hi = std::isinf(p.v_max) ? 60.0 : std::min(l0 + p.v_max / kt, 60.0);
    if (!(u_hi > u_lo)) return 0.0;
    auto f = [&](double u) {
        const double v = (u - l0) * kt;
        return kt * p.pdf(v) * std::exp(u) / (1.0 + std::exp(2.0 * u));
    };
    std::vector<double> edges = detail::linear_edges(u_lo, u_hi, std::max(8, static_cast<int>((u_hi - u_lo) / 2.0)));
    if (p.kind == BarrierDistribution::Kind::lorentzian) {
        const double uc = l0 + p.v0 / kt;
        if (uc > u_lo && uc < u_hi) {
            edges.push_back(uc);
            std::sort(edges.begin(), edges.end());
        }
    }
    const double integral = detail::integrate_pieces(f, edges, rel_tol, "tlf_ensemble_spectrum");
    return 0.5 * ens.mu * ens.mu * energy_factor(ens.e_max, kt) * integral / omega;
}

double tunneling_spectrum(const TLFEnsemble& ens, double omega, double temperature, double rel_tol) {
    const auto& tp = ens.tunneling;
    const double kt = boltzmann * temperature;
    const double p0 = tp.p0();
    const double t_max = std::sqrt(tp.t1_span - 1.0);
    // T1 = T_min (1 + t^2), removing the square-root edge of cos^2(phi) P(E, T1)
    auto inner = [&](double e) {
        const double tmin = tp.t_min(e, temperature);
        auto g = [&](double t) {
            const double t1 = tmin * (1.0 + t * t);
            return t / std::sqrt(1.0 + t * t) * tmin * t / (1.0 + omega * omega * t1 * t1);
        };
        auto edges = detail::log_edges(1e-6, t_max, 40);
        edges.insert(edges.begin(), 0.0);
        // kept below the outer tolerance so the outer adaptive pass sees a smooth integrand
        return detail::integrate_pieces(g, edges, rel_tol * 1e-2, "tlf tunnelling T1 average");
    };
    auto outer = [&](double e) {
        if (e <= 0.0) return 0.0;
        const double c = std::cosh(e / (2.0 * kt));
        return inner(e) / (c * c);
    };
    const double e_top = std::min(ens.e_max, 60.0 * kt);
    auto edges = detail::log_edges(1e-6 * kt, e_top, 30);
    edges.insert(edges.begin(), 0.0);
    const double integral = detail::integrate_pieces(outer, edges, rel_tol * 10.0, "tlf tunnelling energy average");
    return 0.5 * ens.mu * ens.mu * p0 * integral;
}

}  // namespace

double tlf_ensemble_spectrum(const TLFEnsemble& ensemble, double omega, double temperature,
                             double rel_tol) {
    ensemble.validate();
    if (!(omega > 0.0)) throw DomainError("tlf_ensemble_spectrum: omega must be positive");
    if (!(temperature > 0.0)) throw DomainError("tlf_ensemble_spectrum: T must be positive");
    if (ensemble.process == TLFEnsemble::Process::thermal)
        return thermal_spectrum(ensemble, omega, temperature, rel_tol);
    return tunneling_spectrum(ensemble, omega, temperature, rel_tol);
}

double tlf_field_spectrum(const TLFEnsemble& ensemble, double omega, double temperature, double d,
                          FieldAxis axis) {
    return dipole_layer_field_spectrum(ensemble.sigma_d, d,
                                       tlf_ensemble_spectrum(ensemble, omega, temperature), axis);
}

double tlf_thermal_closed_form(double mu, double delta_v, double omega, double temperature) {
    return pi * boltzmann * temperature * mu * mu / (4.0 * omega * delta_v);
}

double tlf_tunneling_closed_form(double mu, double p0, double omega, double temperature) {
    return p0 * pi * boltzmann * temperature * mu * mu / (4.0 * omega);
}

double dutta_horn_approximation(const TLFEnsemble& ensemble, double omega, double temperature) {
    ensemble.barriers.validate();
    const double kt = boltzmann * temperature;
    const double v_star = -kt * std::log(omega * ensemble.tau0);
    return ensemble.mu * ensemble.mu * pi * kt / (4.0 * omega) * ensemble.barriers.pdf(v_star);
}

DuttaHornResult dutta_horn(const TLFEnsemble& ensemble, double omega, double temperature,
                           double rel_step) {
    if (ensemble.process != TLFEnsemble::Process::thermal)
        throw DomainError("dutta_horn: thermally activated ensemble required");
    auto s = [&](double w, double t) { return tlf_ensemble_spectrum(ensemble, w, t); };
    const double h = rel_step;
    const double up = std::exp(h), dn = std::exp(-h);
    DuttaHornResult r;
    r.spectrum = s(omega, temperature);
    const double st_up = s(omega, temperature * up), st_dn = s(omega, temperature * dn);
    const double sw_up = s(omega * up, temperature), sw_dn = s(omega * dn, temperature);
    if (!(st_up > 0.0 && st_dn > 0.0 && sw_up > 0.0 && sw_dn > 0.0))
        throw DomainError("dutta_horn: spectrum vanishes in the difference stencil");
    r.gamma = (std::log(st_up) - std::log(st_dn)) / (2.0 * h);
    r.alpha_direct = -(std::log(sw_up) - std::log(sw_dn)) / (2.0 * h);
    r.alpha = 1.0 - (r.gamma - 1.0) / std::log(omega * ensemble.tau0);
    return r;
}

}  // namespace ionnoise
