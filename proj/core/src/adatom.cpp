#include "ionnoise/adatom.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"
#include "ionnoise/tlf.hpp"

namespace ionnoise {

using namespace constants;

void AdatomModel::validate() const {
    if (!(w > 3.0)) throw DomainError("AdatomModel: w must exceed 3");
    if (!(u0 > 0.0)) throw DomainError("AdatomModel: U0 must be positive");
    if (!(z0 > 0.0) || !(mass > 0.0)) throw DomainError("AdatomModel: z0 and mass must be positive");
    if (!(density > 0.0) || !(sound_velocity > 0.0))
        throw DomainError("AdatomModel: substrate density and sound velocity must be positive");
    if (debye_cutoff && !(lattice_constant > 0.0))
        throw DomainError("AdatomModel: lattice constant must be positive");
    if (grid_points < 100) throw DomainError("AdatomModel: grid too coarse");
    if (!(z_max_factor > 1.0) || !(z_min_factor > 0.0) || !(z_min_factor < 1.0))
        throw DomainError("AdatomModel: grid must bracket z0");
    if (sigma_d < 0.0 || gamma0_override < 0.0) throw DomainError("AdatomModel: negative parameter");
}

double AdatomModel::potential(double z) const {
    const double r = z0 / z;
    return w / (w - 3.0) * u0 * (3.0 / w * std::exp(w * (1.0 - z / z0)) - r * r * r);
}

double AdatomModel::potential_derivative(double z) const {
    const double r = z0 / z;
    return w / (w - 3.0) * u0 / z0 * (-3.0 * std::exp(w * (1.0 - z / z0)) + 3.0 * r * r * r * r);
}

double AdatomModel::dipole(double z) const {
    const double r = z0 / z;
    return mu0 * r * r * r * r;
}

double adatom_nu10_harmonic(const AdatomModel& model) {
    const double w = model.w;
    const double zeta = std::sqrt(3.0 * (w * w - 4.0 * w) / (w - 3.0));
    return zeta * std::sqrt(model.u0 / (model.mass * model.z0 * model.z0));
}

double adatom_gamma0_estimate(double nu10, double mass, double sound_velocity, double density) {
    const double v3 = sound_velocity * sound_velocity * sound_velocity;
    return std::pow(nu10, 4) * mass / (4.0 * pi * v3 * density);
}

double debye_frequency(double sound_velocity, double lattice_constant) {
    const double a3 = lattice_constant * lattice_constant * lattice_constant;
    return sound_velocity * std::cbrt(6.0 * pi * pi / a3);
}

namespace {

// Inner turning point of the model potential: the barrier maximum below z0, where
// exp(w (1 - x)) = x^-4 with x = z/z0.
double inner_barrier(double w) {
    auto f = [w](double x) { return std::exp(w * (1.0 - x)) - std::pow(x, -4.0); };
    double lo = 1e-3, hi = 0.95;
    if (f(lo) * f(hi) > 0.0) return 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double bose(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = hbar * omega / (boltzmann * temperature);
    return x > 700.0 ? 0.0 : 1.0 / std::expm1(x);
}

}  // namespace

AdatomSolver::AdatomSolver(const AdatomModel& model, int n_levels) : model_(model) {
    model.validate();
    if (n_levels != all_bound_levels && n_levels < 2) throw DomainError("adatom: at least two levels required");

    const double x_lo = std::max(model.z_min_factor, inner_barrier(model.w));
    z_lo_ = x_lo * model.z0;
    const double z_hi = model.z_max_factor * model.z0;
    const int n = model.grid_points;
    const double h = (z_hi - z_lo_) / (n + 1);
    const double t = hbar * hbar / (2.0 * model.mass * h * h) / model.u0;  // in units of U0

    std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n - 1), -t);
    std::vector<double> grid(static_cast<std::size_t>(n));
    double u_min = 0.0;
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = z_lo_ + (i + 1) * h;
        const double u = model.potential(grid[static_cast<std::size_t>(i)]) / model.u0;
        diag[static_cast<std::size_t>(i)] = 2.0 * t + u;
        u_min = std::min(u_min, u);
    }

    std::vector<double> d = diag, e = off;
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<lapack_int> support(static_cast<std::size_t>(2 * n));
    lapack_int found = 0;
    // count bound states
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'V', n, d.data(), e.data(), u_min - 1.0, 0.0,
                                     0, 0, 0.0, &found, w.data(), nullptr, 1, support.data());
    if (info != 0) throw ConvergenceError("adatom: eigensolver failed (info " + std::to_string(info) + ")");
    bound_count_ = static_cast<int>(found);
    if (bound_count_ < 2) {
        std::ostringstream msg;
        msg << "adatom: potential supports " << bound_count_ << " bound state(s), two required";
        throw DomainError(msg.str());
    }
    if (n_levels == all_bound_levels) n_levels = bound_count_;
    if (n_levels > bound_count_) {
        std::ostringstream msg;
        msg << "adatom: requested " << n_levels << " levels but the potential binds only " << bound_count_;
        throw DomainError(msg.str());
    }

    d = diag;
    e = off;
    std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(n_levels));
    info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, n_levels, 0.0,
                          &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != n_levels)
        throw ConvergenceError("adatom: eigensolver failed (info " + std::to_string(info) + ")");

    energies_.resize(static_cast<std::size_t>(n_levels));
    dipoles_.assign(static_cast<std::size_t>(n_levels), 0.0);
    couplings_.assign(static_cast<std::size_t>(n_levels * n_levels), 0.0);
    std::vector<double> du(static_cast<std::size_t>(n)), mu(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        du[static_cast<std::size_t>(i)] = model.potential_derivative(grid[static_cast<std::size_t>(i)]);
        mu[static_cast<std::size_t>(i)] = model.dipole(grid[static_cast<std::size_t>(i)]);
    }
    auto psi = [&](int level, int i) {
        return z[static_cast<std::size_t>(level) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
    };
    for (int a = 0; a < n_levels; ++a) {
        energies_[static_cast<std::size_t>(a)] = w[static_cast<std::size_t>(a)] * model.u0;
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += psi(a, i) * psi(a, i) * mu[static_cast<std::size_t>(i)];
        dipoles_[static_cast<std::size_t>(a)] = s;
        for (int b = 0; b < a; ++b) {
            double m = 0.0;
            for (int i = 0; i < n; ++i) m += psi(a, i) * du[static_cast<std::size_t>(i)] * psi(b, i);
            couplings_[static_cast<std::size_t>(a * n_levels + b)] = m * m;
            couplings_[static_cast<std::size_t>(b * n_levels + a)] = m * m;
        }
    }
    if (model.gamma0_override > 0.0) scale_ = model.gamma0_override / raw_coupling(1, 0);
}

double AdatomSolver::nu(int n, int m) const {
    return (energies_.at(static_cast<std::size_t>(n)) - energies_.at(static_cast<std::size_t>(m))) / hbar;
}

double AdatomSolver::raw_coupling(int n, int m) const {
    const int levels = this->levels();
    const double nu_nm = std::abs(nu(n, m));
    if (model_.debye_cutoff && nu_nm > debye_frequency(model_.sound_velocity, model_.lattice_constant))
        return 0.0;
    const double v3 = model_.sound_velocity * model_.sound_velocity * model_.sound_velocity;
    // pi g(nu) / (3 hbar M nu) with g = 3 a^3 nu^2 / (2 pi^2 v^3), M = rho a^3
    return nu_nm * couplings_[static_cast<std::size_t>(n * levels + m)] /
           (2.0 * pi * hbar * model_.density * v3);
}

double AdatomSolver::coupling(int n, int m) const { return scale_ * raw_coupling(n, m); }

double AdatomSolver::gamma0() const { return coupling(1, 0); }

AdatomRates AdatomSolver::rates(int n, int m, double temperature) const {
    if (n == m) throw DomainError("adatom_rates: n and m must differ");
    if (n < 0 || m < 0 || n >= levels() || m >= levels()) throw DomainError("adatom_rates: level out of range");
    if (temperature < 0.0) throw DomainError("adatom_rates: negative temperature");
    const int hi = std::max(n, m), lo = std::min(n, m);
    const double g = coupling(hi, lo);
    const double nb = bose(nu(hi, lo), temperature);
    AdatomRates r{g * (nb + 1.0), g * nb};
    if (n < m) std::swap(r.down, r.up);
    return r;
}

std::vector<double> AdatomSolver::populations(double temperature) const {
    std::vector<double> p(energies_.size(), 0.0);
    if (temperature <= 0.0) {
        p[0] = 1.0;
        return p;
    }
    const double kt = boltzmann * temperature;
    double z = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::exp(-(energies_[i] - energies_[0]) / kt);
        z += p[i];
    }
    for (auto& x : p) x /= z;
    return p;
}

double AdatomSolver::dipole_spectrum(double omega, double temperature) const {
    if (!(omega > 0.0)) throw DomainError("adatom_spectrum: omega must be positive");
    const int n = levels();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b) {
            const auto r = rates(a, b, temperature);
            w(b, a) += r.down;  // a -> b
            w(a, a) -= r.down;
            w(a, b) += r.up;    // b -> a
            w(b, b) -= r.up;
        }
    const auto p = populations(temperature);
    Eigen::VectorXd mu(n), pv(n);
    for (int a = 0; a < n; ++a) {
        mu(a) = dipoles_[static_cast<std::size_t>(a)];
        pv(a) = p[static_cast<std::size_t>(a)];
    }
    const Eigen::VectorXd x = pv.cwiseProduct(mu) - pv * pv.dot(mu);
    Eigen::MatrixXcd a = std::complex<double>(0.0, omega) * Eigen::MatrixXcd::Identity(n, n) -
                         w.cast<std::complex<double>>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-15)) {
        std::ostringstream msg;
        msg << "adatom_spectrum: rate matrix singular at omega " << omega << " (rcond " << rcond << ")";
        throw ConvergenceError(msg.str());
    }
    const Eigen::VectorXcd y = lu.solve(x.cast<std::complex<double>>());
    return std::max(0.0, 2.0 * (mu.cast<std::complex<double>>().dot(y)).real());
}

double AdatomSolver::two_level_spectrum(double omega, double temperature) const {
    const auto r = rates(1, 0, temperature);
    const double g = r.down + r.up;
    double p1 = 0.0;
    if (temperature > 0.0) {
        const double x = std::exp(-hbar * nu10() / (boltzmann * temperature));
        p1 = x / (1.0 + x);
    }
    const double dm = dipoles_[0] - dipoles_[1];
    return dm * dm * p1 * (1.0 - p1) * 2.0 * g / (omega * omega + g * g);
}

double AdatomSolver::two_level_low_temperature(double omega, double temperature) const {
    const double g0 = gamma0();
    const double dm = dipoles_[0] - dipoles_[1];
    const double boltz = temperature > 0.0 ? std::exp(-hbar * nu10() / (boltzmann * temperature)) : 0.0;
    return dm * dm * 2.0 * g0 / (omega * omega + g0 * g0) * boltz;
}

AdatomRates adatom_rates(const AdatomModel& model, int n, int m, double temperature) {
    return AdatomSolver(model, std::max(n, m) + 1).rates(n, m, temperature);
}

double adatom_spectrum(const AdatomModel& model, double omega, double temperature, int n_levels,
                       double d, FieldAxis axis) {
    const AdatomSolver solver(model, n_levels);
    return dipole_layer_field_spectrum(model.sigma_d, d, solver.dipole_spectrum(omega, temperature), axis);
}

}  // namespace ionnoise
