#include "ionnoise/modes.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"
#include "quadrature.hpp"

namespace ionnoise {

namespace {

Eigen::VectorXd force(const Eigen::VectorXd& u) {
    const auto n = u.size();
    Eigen::VectorXd f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = u(i);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double r = u(i) - u(j);
            s -= (r > 0 ? 1.0 : -1.0) / (r * r);
        }
        f(i) = s;
    }
    return f;
}

Eigen::MatrixXd coulomb_couplings(const Eigen::VectorXd& u) {
    const auto n = u.size();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) c(i, j) = 1.0 / std::pow(std::abs(u(i) - u(j)), 3);
    return c;
}

std::vector<NormalMode> diagonalise(const Eigen::MatrixXd& h, double omega_ax, ModeAxis axis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("normal_modes: eigensolver failed");
    std::vector<NormalMode> out;
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        const double mu = es.eigenvalues()(k);
        if (mu <= 0.0) {
            std::ostringstream msg;
            msg << "normal_modes: radial confinement too weak, mode eigenvalue " << mu
                << " (zigzag instability)";
            throw StructuralInstabilityError(msg.str());
        }
        Eigen::VectorXd v = es.eigenvectors().col(k);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0) v = -v;
        out.push_back({axis, omega_ax * std::sqrt(mu), std::vector<double>(v.data(), v.data() + v.size())});
    }
    return out;
}

}  // namespace

std::vector<double> ModeStructure::mode_freqs() const {
    std::vector<double> f;
    f.reserve(modes.size());
    for (const auto& m : modes) f.push_back(m.omega);
    return f;
}

const NormalMode& ModeStructure::axial_com() const {
    for (const auto& m : modes)
        if (m.axis == ModeAxis::axial) return m;
    throw DomainError("ModeStructure: no axial modes");
}

const NormalMode& ModeStructure::radial_com(ModeAxis axis) const {
    const NormalMode* best = nullptr;
    for (const auto& m : modes)
        if (m.axis == axis && (!best || m.omega > best->omega)) best = &m;
    if (!best) throw DomainError("ModeStructure: no modes along requested radial axis");
    return *best;
}

SpatialCorrelation SpatialCorrelation::exponential(double r_c) {
    if (!(r_c > 0.0)) throw DomainError("SpatialCorrelation: r_c must be positive");
    return {Kind::exponential, r_c};
}

double SpatialCorrelation::coefficient(double separation) const {
    switch (kind) {
        case Kind::fully_correlated: return 1.0;
        case Kind::uncorrelated: return separation == 0.0 ? 1.0 : 0.0;
        case Kind::exponential: return std::exp(-std::abs(separation) / r_c);
    }
    return 0.0;
}

double chain_length_scale(const IonSpecies& ion, double omega_ax) {
    using namespace constants;
    const double e = elementary_charge;
    return std::cbrt(e * e / (4.0 * pi * epsilon0 * ion.mass * omega_ax * omega_ax));
}

std::vector<double> chain_equilibrium(int n_ions, double omega_ax, const IonSpecies& ion,
                                      double tol, int max_iter) {
    if (n_ions < 1) throw DomainError("chain_equilibrium: n_ions must be >= 1");
    if (!(omega_ax > 0.0)) throw DomainError("chain_equilibrium: omega_ax must be positive");
    const double ell = chain_length_scale(ion, omega_ax);
    const auto n = static_cast<Eigen::Index>(n_ions);
    Eigen::VectorXd u(n);
    const double spacing = 2.018 / std::pow(static_cast<double>(n_ions), 0.559);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = (static_cast<double>(i) - 0.5 * (n_ions - 1)) * spacing;

    Eigen::VectorXd f = force(u);
    int iter = 0;
    while (f.cwiseAbs().maxCoeff() > tol) {
        if (++iter > max_iter) {
            std::ostringstream msg;
            msg << "chain_equilibrium: no convergence after " << max_iter << " iterations (residual "
                << f.cwiseAbs().maxCoeff() << ")";
            throw ConvergenceError(msg.str());
        }
        const Eigen::MatrixXd c = coulomb_couplings(u);
        Eigen::MatrixXd jac = -2.0 * c;
        for (Eigen::Index i = 0; i < n; ++i) jac(i, i) = 1.0 + 2.0 * c.row(i).sum();
        const Eigen::VectorXd step = jac.partialPivLu().solve(-f);
        double lambda = 1.0;
        const double f0 = f.norm();
        Eigen::VectorXd trial;
        Eigen::VectorXd ftrial;
        for (int k = 0; k < 40; ++k) {
            trial = u + lambda * step;
            bool ordered = true;
            for (Eigen::Index i = 0; i + 1 < n; ++i) ordered = ordered && trial(i) < trial(i + 1);
            if (ordered) {
                ftrial = force(trial);
                if (ftrial.norm() < f0 || ftrial.norm() < tol) break;
            }
            lambda *= 0.5;
        }
        u = trial;
        f = ftrial.size() == n ? ftrial : force(u);
    }
    // enforce exact symmetry about the origin
    Eigen::VectorXd sym = 0.5 * (u - u.reverse());
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sym(i) * ell;
    return out;
}

double chain_force_residual(const std::vector<double>& positions, double omega_ax,
                            const IonSpecies& ion) {
    const double ell = chain_length_scale(ion, omega_ax);
    Eigen::VectorXd u(static_cast<Eigen::Index>(positions.size()));
    for (std::size_t i = 0; i < positions.size(); ++i) u(static_cast<Eigen::Index>(i)) = positions[i] / ell;
    return force(u).cwiseAbs().maxCoeff();
}

ModeStructure normal_modes(const std::vector<double>& positions, const IonSpecies& ion,
                           double omega_ax, double omega_rad) {
    if (positions.empty()) throw DomainError("normal_modes: empty chain");
    if (!(omega_ax > 0.0) || !(omega_rad > 0.0))
        throw DomainError("normal_modes: frequencies must be positive");
    const double ell = chain_length_scale(ion, omega_ax);
    const auto n = static_cast<Eigen::Index>(positions.size());
    Eigen::VectorXd u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = positions[static_cast<std::size_t>(i)] / ell;
    const Eigen::MatrixXd c = coulomb_couplings(u);

    Eigen::MatrixXd ax = -2.0 * c;
    Eigen::MatrixXd rad = c;
    const double ratio2 = (omega_rad / omega_ax) * (omega_rad / omega_ax);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = c.row(i).sum();
        ax(i, i) = 1.0 + 2.0 * s;
        rad(i, i) = ratio2 - s;
    }

    ModeStructure ms;
    ms.positions = positions;
    for (auto axis : {ModeAxis::axial, ModeAxis::radial_x, ModeAxis::radial_y}) {
        auto block = diagonalise(axis == ModeAxis::axial ? ax : rad, omega_ax, axis);
        ms.modes.insert(ms.modes.end(), block.begin(), block.end());
    }
    return ms;
}

std::vector<double> mode_heating_rates(const ModeStructure& modes,
                                       const SpatialCorrelation& correlation,
                                       const Spectrum& base_spectrum, const IonSpecies& ion) {
    const auto& z = modes.positions;
    std::vector<double> rates;
    rates.reserve(modes.modes.size());
    for (const auto& m : modes.modes) {
        double weight = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t j = 0; j < z.size(); ++j)
                weight += m.vector[i] * m.vector[j] * correlation.coefficient(z[i] - z[j]);
        const double s = base_spectrum(m.omega);
        if (s < 0.0) throw DomainError("mode_heating_rates: negative spectrum value");
        rates.push_back(heating_rate(ion, m.omega, std::max(0.0, weight) * s));
    }
    return rates;
}

double ion_field_correlation(double x0, double d, double r_c) {
    if (!(x0 > 0.0) || !(d > 0.0) || !(r_c > 0.0))
        throw DomainError("two_ion_correlation_ratio: x0, d, r_c must be positive");
    if (std::isinf(r_c)) return 1.0;
    // S(x) = int k^3 exp(-2kd) C(k) J0(k x) dk with C(k) = (1 + k^2 r_c^2)^(-3/2)
    auto kernel = [d, r_c](double k) {
        const double kr = k * r_c;
        return k * k * k * std::exp(-2.0 * k * d) / std::pow(1.0 + kr * kr, 1.5);
    };
    const double k_max = 40.0 / d;
    const int pieces = std::max(16, static_cast<int>(k_max * x0 / constants::pi) + 1);
    auto edges = detail::linear_edges(0.0, k_max, pieces);
    auto edges11 = detail::linear_edges(0.0, k_max, 16);
    // resolve the knee of C(k) at k ~ 1/r_c when it falls inside the first panel
    for (double k = 0.01 / r_c; k < edges[1]; k *= 4.0) edges.push_back(k);
    for (double k = 0.01 / r_c; k < edges11[1]; k *= 4.0) edges11.push_back(k);
    std::sort(edges.begin(), edges.end());
    std::sort(edges11.begin(), edges11.end());
    const double s11 = detail::integrate_pieces(kernel, edges11, 1e-10, "two_ion_correlation_ratio");
    const double s12 = detail::integrate_pieces(
        [&](double k) { return kernel(k) * std::cyl_bessel_j(0.0, k * x0); }, edges, 1e-10,
        "two_ion_correlation_ratio");
    return s12 / s11;
}

double two_ion_correlation_ratio(double x0, double d, double r_c) {
    const double c = ion_field_correlation(x0, d, r_c);
    return (1.0 - c) / (1.0 + c);
}

}  // namespace ionnoise
