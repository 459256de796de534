#include "ionnoise/thermometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ionnoise/errors.hpp"
#include "ionnoise/trap.hpp"

namespace ionnoise {

namespace {

constexpr double tail_limit = 1e-8;

// delta-method sigma of the ratio estimate; d nbar / d ln r = x / (k (1 - x)^2)
double nbar_sigma(double p_red, double p_blue, double shots, int order) {
    const double var_ln_r = (1.0 - p_red) / (shots * p_red) + (1.0 - p_blue) / (shots * p_blue);
    const double x = std::pow(p_red / p_blue, 1.0 / order);
    return x / (order * (1.0 - x) * (1.0 - x)) * std::sqrt(var_ln_r);
}

}  // namespace

PhononDistribution PhononDistribution::thermal(double nbar) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("thermal: nbar must be finite and >= 0");
    int n_max = std::max(50, static_cast<int>(std::ceil(20.0 * nbar)));
    const double z = nbar / (1.0 + nbar);
    // tail mass beyond n_max is z^(n_max+1)
    while (std::pow(z, n_max + 1) >= tail_limit) n_max *= 2;
    PhononDistribution d;
    d.p.resize(n_max + 1);
    double pn = 1.0 / (1.0 + nbar);
    for (int n = 0; n <= n_max; ++n) {
        d.p[n] = pn;
        pn *= z;
    }
    const double total = std::accumulate(d.p.begin(), d.p.end(), 0.0);
    for (double& x : d.p) x /= total;
    return d;
}

PhononDistribution PhononDistribution::fock(int n) {
    if (n < 0) throw DomainError("fock: n must be >= 0");
    PhononDistribution d;
    d.p.assign(std::max(n + 1, 51), 0.0);
    d.p[n] = 1.0;
    return d;
}

PhononDistribution PhononDistribution::from_probabilities(std::vector<double> p) {
    if (p.empty()) throw DomainError("phonon distribution: empty");
    double total = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw DomainError("phonon distribution: negative probability");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("phonon distribution: probabilities must sum to 1");
    return PhononDistribution{std::move(p)};
}

double PhononDistribution::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) m += static_cast<double>(n) * p[n];
    return m;
}

double sideband_rabi_factor(int n, double eta, Sideband side, int order) {
    if (order < 1) throw DomainError("sideband order must be >= 1");
    const int lo = side == Sideband::red ? n - order : n;
    const int hi = side == Sideband::red ? n : n + order;
    if (lo < 0) return 0.0;
    // eta^k sqrt(hi! / lo!) / k!
    const double log_ratio = std::lgamma(hi + 1.0) - std::lgamma(lo + 1.0) - 2.0 * std::lgamma(order + 1.0);
    return std::pow(eta, order) * std::exp(0.5 * log_ratio);
}

double sideband_signal(const PhononDistribution& dist, double eta, double omega_l, double t,
                       Sideband side, int order) {
    double s = 0.0;
    for (int n = 0; n <= dist.n_max(); ++n) {
        if (dist.p[n] == 0.0) continue;
        s += dist.p[n] * std::cos(sideband_rabi_factor(n, eta, side, order) * omega_l * t);
    }
    return std::clamp(0.5 * (1.0 - s), 0.0, 1.0);
}

bool lamb_dicke_valid(const PhononDistribution& dist, double eta, double threshold) {
    return eta * eta * (2.0 * dist.mean() + 1.0) < threshold;
}

double ratio_thermometry(double p_red, double p_blue, int order) {
    if (order < 1) throw DomainError("ratio_thermometry: order must be >= 1");
    if (!(p_red >= 0.0) || !(p_blue <= 1.0)) throw DomainError("ratio_thermometry: probabilities must lie in [0, 1]");
    if (p_red >= p_blue)
        throw NonThermalStateError(
            "ratio_thermometry: red sideband not weaker than blue; thermal assumption fails");
    const double x = std::pow(p_red / p_blue, 1.0 / order);
    return x / (1.0 - x);
}

double carrier_contrast(const PhononDistribution& dist, double eta) {
    const double x = eta * eta;
    double s = 0.0;
    for (int n = 0; n <= dist.n_max(); ++n) {
        if (dist.p[n] == 0.0) continue;
        s += dist.p[n] * std::laguerre(static_cast<unsigned>(n), x);
    }
    return std::exp(-0.5 * x) * s;
}

double carrier_contrast_thermal(double nbar, double eta) {
    return std::exp(-eta * eta * (nbar + 0.5));
}

HeatingEstimate simulate_heating_measurement(const HeatingMeasurementConfig& cfg) {
    if (cfg.shots < 1) throw InputError("simulate_heating_measurement: shots must be >= 1");
    if (cfg.wait_times.empty()) throw InputError("simulate_heating_measurement: no wait times");
    if (!(cfg.gamma_h >= 0.0)) throw DomainError("simulate_heating_measurement: gamma_h must be >= 0");
    if (!(cfg.nbar_bath > 0.0)) throw DomainError("simulate_heating_measurement: nbar_bath must be positive");
    for (double t : cfg.wait_times)
        if (!(t >= 0.0)) throw InputError("simulate_heating_measurement: wait times must be >= 0");

    std::mt19937_64 rng(cfg.seed);
    const double decay = cfg.gamma_h / cfg.nbar_bath;
    const double probe = 3.14159265358979323846 /
                         (sideband_rabi_factor(0, cfg.eta, Sideband::blue, cfg.order) * cfg.omega_l);
    const double n = cfg.shots;

    HeatingEstimate est;
    for (double t : cfg.wait_times) {
        HeatingPoint pt;
        pt.wait_time = t;
        pt.nbar_true = nbar_evolution(cfg.nbar0, decay, cfg.nbar_bath, t);
        const auto dist = PhononDistribution::thermal(pt.nbar_true);
        pt.p_red = sideband_signal(dist, cfg.eta, cfg.omega_l, probe, Sideband::red, cfg.order);
        pt.p_blue = sideband_signal(dist, cfg.eta, cfg.omega_l, probe, Sideband::blue, cfg.order);
        pt.red_counts = std::binomial_distribution<int>(cfg.shots, pt.p_red)(rng);
        pt.blue_counts = std::binomial_distribution<int>(cfg.shots, pt.p_blue)(rng);
        if (pt.red_counts < pt.blue_counts) {
            const double pr = pt.red_counts / n, pb = pt.blue_counts / n;
            pt.nbar = ratio_thermometry(pr, pb, cfg.order);
            // add-one smoothing keeps zero counts at a finite variance
            pt.sigma = nbar_sigma((pt.red_counts + 1.0) / (n + 2.0), (pt.blue_counts + 1.0) / (n + 2.0), n,
                                  cfg.order);
            pt.used = std::isfinite(pt.sigma) && pt.sigma > 0.0;
        }
        est.points.push_back(pt);
    }

    // weights from the smoothed counts first, then from the fitted model so that
    // they do not correlate with the shot noise of each point
    const auto fit = [&](bool final_pass) {
        double s = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int used = 0;
        for (const auto& pt : est.points) {
            if (!pt.used) continue;
            const double w = 1.0 / (pt.sigma * pt.sigma);
            s += w;
            sx += w * pt.wait_time;
            sy += w * pt.nbar;
            sxx += w * pt.wait_time * pt.wait_time;
            sxy += w * pt.wait_time * pt.nbar;
            ++used;
        }
        const double det = s * sxx - sx * sx;
        if (used < 2 || !(det > 0.0))
            throw EstimationError("simulate_heating_measurement: too few unsaturated wait times for a fit");
        est.rate = (s * sxy - sx * sy) / det;
        est.intercept = (sxx * sy - sx * sxy) / det;
        if (final_pass) est.uncertainty = std::sqrt(s / det);
    };
    constexpr int reweight_passes = 3;
    fit(false);
    for (int pass = 0; pass < reweight_passes; ++pass) {
        for (auto& pt : est.points) {
            if (!pt.used) continue;
            const double model = std::max(est.intercept + est.rate * pt.wait_time, 1e-3);
            const auto dist = PhononDistribution::thermal(model);
            const double pr = sideband_signal(dist, cfg.eta, cfg.omega_l, probe, Sideband::red, cfg.order);
            const double pb = sideband_signal(dist, cfg.eta, cfg.omega_l, probe, Sideband::blue, cfg.order);
            pt.sigma = nbar_sigma(pr, pb, n, cfg.order);
        }
        fit(pass + 1 == reweight_passes);
    }
    for (const auto& pt : est.points)
        if (pt.used && pt.nbar > cfg.nbar_validity_limit) est.valid = false;
    return est;
}

}  // namespace ionnoise
