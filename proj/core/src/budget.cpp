#include "ionnoise/budget.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ionnoise/errors.hpp"
#include "ionnoise/trap.hpp"

namespace ionnoise {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

EvalPoint row_point(const NoiseMechanism& m, const TrapConfiguration& cfg) {
    EvalPoint p = cfg.reference_point();
    if (m.distance) p.d = *m.distance;
    return p;
}

}  // namespace

BudgetRow evaluate_row(const NoiseMechanism& m, const EvalPoint& p, const IonSpecies& ion, double rel_step) {
    BudgetRow row;
    row.kind = m.kind();
    row.label = m.label;
    row.point = p;
    try {
        row.s_e = m.spectrum(p);
        if (!(row.s_e >= 0.0)) throw DomainError("negative or undefined spectrum");
        row.gamma_h = heating_rate(ion, p.omega, row.s_e);
        row.warnings = m.warnings(p);
    } catch (const std::exception& e) {
        row.error = e.what();
        row.s_e = row.gamma_h = row.alpha = row.beta = row.gamma = nan;
        return row;
    }
    const auto exponent = [&](auto shifted, double sign, const char* name) {
        try {
            return sign * log_derivative(shifted, 1.0, rel_step);
        } catch (const std::exception& e) {
            row.warnings.push_back(std::string(name) + " undefined: " + e.what());
            return nan;
        }
    };
    row.alpha = exponent([&](double s) { return m.spectrum({p.omega * s, p.d, p.temperature}); }, -1.0, "alpha");
    row.beta = exponent([&](double s) { return m.spectrum({p.omega, p.d * s, p.temperature}); }, -1.0, "beta");
    row.gamma = exponent([&](double s) { return m.spectrum({p.omega, p.d, p.temperature * s}); }, 1.0, "gamma");
    return row;
}

BudgetReport noise_budget(const TrapConfiguration& config) {
    if (config.mechanisms.empty()) throw InputError("noise_budget: no mechanism blocks configured");
    BudgetReport report;
    report.warnings = config.warnings;
    for (const auto& m : config.mechanisms) {
        report.rows.push_back(evaluate_row(*m, row_point(*m, config), config.species));
        const auto& row = report.rows.back();
        if (row.ok()) {
            report.total_s_e += row.s_e;
            report.total_gamma_h += row.gamma_h;
        }
    }
    return report;
}

ScanVariable parse_scan_variable(const std::string& tag) {
    if (tag == "omega") return ScanVariable::omega;
    if (tag == "d") return ScanVariable::d;
    if (tag == "T") return ScanVariable::temperature;
    throw InputError("scan variable must be 'omega', 'd' or 'T'");
}

const char* to_string(ScanVariable v) {
    switch (v) {
        case ScanVariable::omega: return "omega";
        case ScanVariable::d: return "d";
        case ScanVariable::temperature: return "T";
    }
    return "";
}

ScanResult scan_and_fit(const TrapConfiguration& config, const ScanRequest& req) {
    if (config.mechanisms.empty()) throw InputError("scan: no mechanism blocks configured");
    if (!(req.lo > 0.0) || !(req.hi > req.lo)) throw InputError("scan: need 0 < lo < hi");
    if (req.points < 3) throw InputError("scan: at least three points required");

    ScanResult out;
    out.variable = req.variable;
    for (int i = 0; i < req.points; ++i)
        out.x.push_back(req.lo * std::pow(req.hi / req.lo, static_cast<double>(i) / (req.points - 1)));

    const std::size_t n_mech = config.mechanisms.size();
    const std::size_t n_pts = out.x.size();
    std::vector<double> values(n_mech * n_pts, nan);
    std::vector<std::string> messages(n_mech * n_pts);

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t k = next++; k < n_mech * n_pts; k = next++) {
            const std::size_t im = k / n_pts, ip = k % n_pts;
            const auto& m = *config.mechanisms[im];
            EvalPoint p = row_point(m, config);
            const double x = out.x[ip];
            switch (req.variable) {
                case ScanVariable::omega: p.omega = x; break;
                case ScanVariable::d: p.d = x; break;
                case ScanVariable::temperature: p.temperature = x; break;
            }
            try {
                const double s = m.spectrum(p);
                if (!(s >= 0.0)) throw DomainError("negative or undefined spectrum");
                values[k] = s;
            } catch (const std::exception& e) {
                messages[k] = e.what();
            }
        }
    };
    unsigned threads = req.threads > 0 ? static_cast<unsigned>(req.threads) : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_mech * n_pts)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    const double sign = req.variable == ScanVariable::temperature ? 1.0 : -1.0;
    const auto finish = [&](ScanSeries& s) {
        std::vector<std::pair<double, double>> samples;
        for (std::size_t i = 0; i < n_pts; ++i)
            if (std::isfinite(s.s_e[i]) && s.s_e[i] > 0.0) samples.emplace_back(out.x[i], s.s_e[i]);
        if (samples.size() < 3) return;
        s.fit = fit_power_law(samples);
        s.fitted = true;
        s.exponent = sign * s.fit.exponent;
        s.non_power_law = s.fit.rms_residual > req.residual_threshold;
    };

    ScanSeries total;
    total.kind = total.label = "total";
    total.s_e.assign(n_pts, 0.0);
    for (std::size_t im = 0; im < n_mech; ++im) {
        ScanSeries s;
        s.kind = config.mechanisms[im]->kind();
        s.label = config.mechanisms[im]->label;
        for (std::size_t ip = 0; ip < n_pts; ++ip) {
            const std::size_t k = im * n_pts + ip;
            s.s_e.push_back(values[k]);
            if (!messages[k].empty()) s.errors.push_back(messages[k]);
            // a failed row leaves the total undefined at that point
            total.s_e[ip] += values[k];
        }
        finish(s);
        out.series.push_back(std::move(s));
    }
    finish(total);
    out.series.push_back(std::move(total));
    return out;
}

}  // namespace ionnoise
