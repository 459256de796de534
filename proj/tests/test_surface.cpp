#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ionnoise/adatom.hpp"
#include "ionnoise/constants.hpp"
#include "ionnoise/diffusion.hpp"
#include "ionnoise/errors.hpp"
#include "ionnoise/geometry.hpp"
#include "ionnoise/kelvin.hpp"
#include "ionnoise/patch.hpp"
#include "ionnoise/tlf.hpp"
#include "oracle.hpp"

using namespace ionnoise;
namespace c = ionnoise::constants;

namespace {

const double w1 = hz_to_rad(1e6);
const double inf = std::numeric_limits<double>::infinity();

bool within_decade(double value, double target) {
    return value > target / 10.0 && value < target * 10.0;
}

struct KelvinRow {
    double x, ker, kei;
};

// 50-digit mpmath evaluation of ker_0 and kei_0
const KelvinRow kelvin_table[] = {
    {0.05, 3.1121542127014099862, -0.78282829686368677921},
    {0.5, 0.85590587211863421369, -0.67158169509436760323},
    {1.0, 0.28670620872831604595, -0.49499463651871990035},
    {2.0, -0.041664513991509532259, -0.20240006776470428829},
    {5.0, -0.01151172719949066247, 0.011187586509869639657},
    {8.0, 0.0014858340685189625373, 0.00036958395612595959259},
    {9.5, 0.00033302893395793705148, -0.00035574333992849685689},
    {10.0, 0.00012946633021480612215, -0.00030752456908814419902},
    {12.0, -0.000063077137052054555661, -0.000038999594971788219274},
    {20.0, -7.7152331098609614611e-8, -1.8589415111194372053e-7},
    {30.0, -1.2938269376020803095e-10, -5.2899966066283239374e-11},
};

TLFEnsemble uniform_tlf(double v_max_ev = 1.0) {
    TLFEnsemble e;
    e.mu = debye_to_cm(5.0);
    e.sigma_d = 4e17;
    e.barriers = BarrierDistribution::uniform(0.0, ev_to_joule(v_max_ev));
    e.tau0 = 1e-13;
    return e;
}

AdatomModel gold_adatom() {
    AdatomModel m;
    m.u0 = ev_to_joule(0.25);
    m.z0 = 3e-10;
    m.w = 5.8;
    m.mass = 100.0 * c::atomic_mass_unit;
    m.mu0 = debye_to_cm(5.0);
    m.density = 19300.0;
    m.sound_velocity = 3240.0;
    m.sigma_d = 1e18;
    return m;
}

DiffusionModel diffusion(DiffusionGeometry g, double radius = 0.0) {
    DiffusionModel m;
    m.d0 = 0.0;
    m.d_t = 1e-10;
    m.mu = debye_to_cm(5.0);
    m.sigma_d = 1e18;
    m.geometry = g;
    m.radius = radius;
    return m;
}

}  // namespace

TEST_CASE("Kelvin functions against the high-precision table") {
    for (const auto& row : kelvin_table) {
        CAPTURE(row.x);
        CHECK(kelvin_ker0(row.x) == doctest::Approx(row.ker).epsilon(1e-9));
        CHECK(kelvin_kei0(row.x) == doctest::Approx(row.kei).epsilon(1e-9));
    }
    SUBCASE("both branches agree at the switch point") {
        for (double x : {kelvin_switch, kelvin_switch + 1.0}) {
            const auto s = kelvin_k0_series(x);
            const auto a = kelvin_k0_asymptotic(x);
            CHECK(std::abs(s - a) < 1e-9 * std::abs(a));
        }
    }
    SUBCASE("logarithmic divergence at small argument") {
        for (double x : {1e-3, 1e-5}) {
            const double lead = -std::log(x / 2.0) - c::euler_gamma;
            CHECK(kelvin_ker0(x) == doctest::Approx(lead).epsilon(1e-5));
            CHECK(kelvin_kei0(x) == doctest::Approx(-c::pi / 4.0).epsilon(1e-5));
        }
    }
    SUBCASE("exponentially small at x = 10") {
        CHECK(std::abs(kelvin_ker0(10.0)) < 1e-3);
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(kelvin_ker0(0.0), DomainError);
        CHECK_THROWS_AS(kelvin_kei0(-1.0), DomainError);
    }
}

TEST_CASE("small-patch limit") {
    PatchModel m{1e-10, 1e-12, 0.7, PatchCorrelation::exponential, 1e-7};
    const double d = 50e-6;
    const double perp = patch_spectrum_small(m, d, FieldAxis::perpendicular);
    CHECK(perp == doctest::Approx(3.0 * 0.7 * 1e-12 * 1e-10 / (16.0 * c::pi * std::pow(d, 4))).epsilon(1e-12));
    CHECK(perp / patch_spectrum_small(m, d, FieldAxis::parallel) == doctest::Approx(2.0));
    CHECK(local_beta([&](double x) { return patch_spectrum_small(m, x, FieldAxis::perpendicular); }, d) ==
          doctest::Approx(4.0).epsilon(1e-6));
    m.s_v = 0.0;
    CHECK(patch_spectrum_small(m, d, FieldAxis::perpendicular) == 0.0);
    CHECK(small_patch_valid(PatchModel{1e-10, 1e-12, 1.0, PatchCorrelation::step, 1e-6}, d));
    CHECK_FALSE(small_patch_valid(PatchModel{1e-10, 1e-12, 1.0, PatchCorrelation::step, 20e-6}, d));
    CHECK_THROWS_AS(patch_spectrum_small(PatchModel{1e-10, 1e-12, 1.5, PatchCorrelation::step, 0.0}, d,
                                         FieldAxis::perpendicular),
                    DomainError);
}

TEST_CASE("small-patch limit against a random discrete-patch sum") {
    // independent patches of area A at density coverage / A, field A V G / (2 pi) each
    const double d = 1.0, area = 0.05 * 0.05, coverage = 0.5, s_v = 1.0;
    const double r_max = 20.0 * d;
    const double density = coverage / area;
    std::mt19937_64 rng(2024);
    std::poisson_distribution<long> count(density * c::pi * r_max * r_max);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto axis : {FieldAxis::perpendicular, FieldAxis::parallel}) {
        double sum = 0.0;
        const int realisations = 20;
        for (int r = 0; r < realisations; ++r) {
            const long n = count(rng);
            double s = 0.0;
            for (long i = 0; i < n; ++i) {
                const double rho = r_max * std::sqrt(u(rng));
                const double phi = 2.0 * c::pi * u(rng);
                const double g = area * planar_geometric_factor(rho * std::cos(phi), rho * std::sin(phi), d, axis) / (2.0 * c::pi);
                s += s_v * g * g;
            }
            sum += s;
        }
        const PatchModel m{s_v, area, coverage, PatchCorrelation::exponential, 0.0};
        CHECK(sum / realisations == doctest::Approx(patch_spectrum_small(m, d, axis)).epsilon(0.02));
    }
}

TEST_CASE("two-plate patch spectrum") {
    const double d = 100e-6;
    auto model = [&](PatchCorrelation k, double rc) {
        return PatchModel{1e-12, effective_patch_area(k, rc), 1.0, k, rc};
    };
    SUBCASE("local distance exponent crosses from 4 to 2") {
        for (auto k : {PatchCorrelation::exponential, PatchCorrelation::step}) {
            const double rc_small = 0.01 * d, rc_big = 100.0 * d;
            auto s_small = [&](double x) { return patch_spectrum_two_plates(model(k, rc_small), x, FieldAxis::perpendicular); };
            auto s_big = [&](double x) { return patch_spectrum_two_plates(model(k, rc_big), x, FieldAxis::perpendicular); };
            CHECK(local_beta(s_small, d) == doctest::Approx(4.0).epsilon(0.05 / 4.0));
            CHECK(local_beta(s_big, d) == doctest::Approx(2.0).epsilon(0.05 / 2.0));
        }
    }
    SUBCASE("effective patch areas in the small-patch limit") {
        const double rc = 1e-3 * d;
        const double e = patch_spectrum_two_plates(model(PatchCorrelation::exponential, rc), d, FieldAxis::perpendicular);
        const double s = patch_spectrum_two_plates(model(PatchCorrelation::step, rc), d, FieldAxis::perpendicular);
        CHECK(effective_patch_area(PatchCorrelation::exponential, rc) / effective_patch_area(PatchCorrelation::step, rc) ==
              doctest::Approx(2.0));
        CHECK(e / s == doctest::Approx(2.0).epsilon(0.01));
    }
    SUBCASE("single-plane Fourier path reproduces the small-patch closed form") {
        for (auto k : {PatchCorrelation::exponential, PatchCorrelation::step}) {
            const auto m = model(k, 1e-3 * d);
            for (auto axis : {FieldAxis::perpendicular, FieldAxis::parallel})
                CHECK(patch_spectrum_planar(m, d, axis) == doctest::Approx(patch_spectrum_small(m, d, axis)).epsilon(0.02));
        }
    }
    SUBCASE("correlation transforms integrate to the effective area") {
        for (auto k : {PatchCorrelation::exponential, PatchCorrelation::step})
            CHECK(patch_correlation_transform(k, 2e-6, 0.0) == doctest::Approx(effective_patch_area(k, 2e-6)));
    }
}

TEST_CASE("single two-level fluctuator") {
    const double mu = debye_to_cm(3.0), t1 = 1e-6, kt = c::boltzmann * 300.0;
    CHECK(tlf_single_spectrum(mu, 0.0, t1, 300.0, 0.0) == doctest::Approx(0.5 * mu * mu * t1));
    CHECK(tlf_single_spectrum(mu, 0.0, t1, 300.0, 1.0 / t1) == doctest::Approx(0.25 * mu * mu * t1));
    const double ratio = tlf_single_spectrum(mu, 4.0 * kt, t1, 300.0, 1e5) / tlf_single_spectrum(mu, 0.0, t1, 300.0, 1e5);
    CHECK(ratio == doctest::Approx(1.0 / std::pow(std::cosh(2.0), 2)).epsilon(1e-12));
    CHECK(ratio == doctest::Approx(0.0707).epsilon(1e-3));
    CHECK_THROWS_AS(tlf_single_spectrum(mu, 0.0, 0.0, 300.0, 1.0), DomainError);
}

TEST_CASE("thermally activated TLF ensemble") {
    const auto e = uniform_tlf();
    SUBCASE("closed form with uniform barriers") {
        const double s = tlf_ensemble_spectrum(e, w1, 300.0);
        CHECK(s == doctest::Approx(tlf_thermal_closed_form(e.mu, ev_to_joule(1.0), w1, 300.0)).epsilon(0.05));
        const double se = tlf_field_spectrum(e, w1, 300.0, 100e-6, FieldAxis::perpendicular);
        CHECK(within_decade(se, 5e-12));
        const double layer = 1.5 * c::pi * e.sigma_d / std::pow(4.0 * c::pi * c::epsilon0, 2) / std::pow(100e-6, 4) * s;
        CHECK(se == doctest::Approx(layer).epsilon(1e-12));
        CHECK(tlf_field_spectrum(e, w1, 300.0, 100e-6, FieldAxis::parallel) == doctest::Approx(0.5 * se));
    }
    SUBCASE("exponents inside the window") {
        for (double f : {1e3, 1e5, 1e7}) {
            const double w = hz_to_rad(f);
            const double alpha = -log_derivative([&](double x) { return tlf_ensemble_spectrum(e, x, 300.0); }, w);
            const double gamma = log_derivative([&](double t) { return tlf_ensemble_spectrum(e, w, t); }, 300.0);
            CHECK(alpha == doctest::Approx(1.0).epsilon(0.02));
            CHECK(gamma == doctest::Approx(1.0).epsilon(0.05));
        }
        const auto win = tlf_validity_window(e, 300.0);
        CHECK(win.contains(w1 * e.tau0));
        CHECK_FALSE(win.contains(1e-30));
    }
    SUBCASE("empty barrier window") {
        auto bad = e;
        bad.barriers = BarrierDistribution{BarrierDistribution::Kind::uniform, 1.0, 1.0, 1.0, 0.0, 0.0};
        CHECK_THROWS_AS(tlf_ensemble_spectrum(bad, w1, 300.0), DomainError);
        CHECK_THROWS_AS(tlf_validity_window(bad, 300.0), DomainError);
    }
    SUBCASE("finite energy cap suppresses the spectrum") {
        auto capped = e;
        capped.e_max = 20.0 * c::boltzmann * 300.0;
        const double ratio = tlf_ensemble_spectrum(capped, w1, 300.0) / tlf_ensemble_spectrum(e, w1, 300.0);
        CHECK(ratio == doctest::Approx(std::tanh(10.0) / 10.0).epsilon(1e-6));
    }
}

TEST_CASE("tunnelling TLF ensemble") {
    TLFEnsemble e;
    e.process = TLFEnsemble::Process::tunneling;
    e.mu = debye_to_cm(5.0);
    e.sigma_d = 4e17;
    e.e_max = ev_to_joule(0.01);
    auto& t = e.tunneling;
    t.delta_max = ev_to_joule(0.01);
    t.lambda_min = 2.0;
    t.lambda_max = 25.0;
    t.t1_span = 1e10;
    t.xi_l = ev_to_joule(1.0);
    t.xi_t = ev_to_joule(1.0);
    t.v_l = 3000.0;
    t.v_t = 3000.0;
    t.density = 2000.0;
    const double temp = 10.0;
    const double kt = c::boltzmann * temp;
    const double s = tlf_ensemble_spectrum(e, w1, temp);
    CHECK(s == doctest::Approx(tlf_tunneling_closed_form(e.mu, t.p0(), w1, temp)).epsilon(0.05));

    // direct 2D average with T1 = T_min cosh^2(s); cos^2(phi) P(E, T1) dT1 = P0 tanh^2(s) ds
    auto inner = [&](double en) {
        const double tmin = t.t_min(en, temp);
        const double s_max = std::acosh(std::sqrt(t.t1_span));
        return oracle::simpson([&](double sv) {
            const double t1 = tmin * std::cosh(sv) * std::cosh(sv);
            return std::pow(std::tanh(sv), 2) * t1 / (1.0 + w1 * w1 * t1 * t1);
        }, 0.0, s_max, 4000);
    };
    const double e_top = std::min(e.e_max, 60.0 * kt);
    // E = e_top x^2 resolves the small-energy end
    const double direct = 0.5 * e.mu * e.mu * t.p0() * oracle::simpson([&](double x) {
        if (x <= 0.0) return 0.0;
        const double en = e_top * x * x;
        return 2.0 * e_top * x * inner(en) / std::pow(std::cosh(en / (2.0 * kt)), 2);
    }, 0.0, 1.0, 400);
    CHECK(s == doctest::Approx(direct).epsilon(1e-3));
    CHECK_THROWS_AS(tlf_ensemble_spectrum([&] { auto b = e; b.tunneling.v_l = 0.0; return b; }(), w1, temp),
                    DomainError);
}

TEST_CASE("Dutta-Horn analysis") {
    auto lorentz = [](double v0_ev) {
        TLFEnsemble e;
        e.mu = debye_to_cm(5.0);
        e.sigma_d = 1e17;
        e.barriers = BarrierDistribution::lorentzian(ev_to_joule(v0_ev), ev_to_joule(0.15));
        e.tau0 = 1e-6 / w1;
        return e;
    };
    auto peak_temperature = [&](const TLFEnsemble& e, double lo, double hi) {
        double best_t = lo, best = 0.0;
        for (double t = lo; t <= hi; t += 1.0) {
            const double s = tlf_ensemble_spectrum(e, w1, t);
            if (s > best) best = s, best_t = t;
        }
        return best_t;
    };
    SUBCASE("uniform barriers give alpha = 1") {
        const auto r = dutta_horn(uniform_tlf(), w1, 300.0);
        CHECK(r.alpha == doctest::Approx(1.0).epsilon(0.02));
        CHECK(r.alpha_direct == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("Lorentzian barriers at 0.3 eV peak near room temperature") {
        const auto e = lorentz(0.3);
        const double t_peak = peak_temperature(e, 100.0, 600.0);
        CHECK(t_peak >= 250.0);
        CHECK(t_peak <= 350.0);
        // alpha crosses 1 within the peak region, at the dominant barrier V0; S rises
        // faster than T below it
        const double t_star = ev_to_joule(0.3) / (c::boltzmann * -std::log(w1 * e.tau0));
        CHECK(dutta_horn(e, w1, 0.9 * t_star).alpha > 1.0);
        CHECK(dutta_horn(e, w1, 1.1 * t_star).alpha < 1.0);
        CHECK(t_star >= 250.0);
        CHECK(t_star <= 350.0);
        // the formula alpha agrees with the direct frequency derivative
        for (double t : {200.0, 300.0, 400.0}) {
            const auto r = dutta_horn(e, w1, t);
            CHECK(r.alpha == doctest::Approx(r.alpha_direct).epsilon(0.05));
        }
    }
    SUBCASE("Lorentzian barriers at 1 eV peak far above room temperature") {
        const double t_peak = peak_temperature(lorentz(1.0), 500.0, 1200.0);
        CHECK(t_peak == doctest::Approx(850.0).epsilon(0.1));
    }
    SUBCASE("power-law barriers") {
        TLFEnsemble e = uniform_tlf(2.0);
        const double g = 2.0;
        e.barriers = BarrierDistribution::power(0.0, ev_to_joule(2.0), g);
        const auto r = dutta_horn(e, w1, 300.0);
        const double expected = 1.0 - (g - 1.0) / std::log(w1 * e.tau0);
        CHECK(r.alpha == doctest::Approx(expected).epsilon(0.02));
        CHECK(r.alpha_direct == doctest::Approx(expected).epsilon(0.02));
    }
    SUBCASE("barrier densities are normalised") {
        for (const auto& b : {BarrierDistribution::uniform(0.0, ev_to_joule(1.0)),
                              BarrierDistribution::power(ev_to_joule(0.1), ev_to_joule(1.0), 3.0),
                              BarrierDistribution::lorentzian(ev_to_joule(0.3), ev_to_joule(0.15))}) {
            const double hi = std::isinf(b.v_max) ? ev_to_joule(40.0) : b.v_max;
            const double norm = oracle::simpson([&](double v) { return b.pdf(v); }, b.v_min, hi, 200000);
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));
        }
    }
}

TEST_CASE("adatom transition rates") {
    SUBCASE("phonon-limited rate estimate") {
        const double g0 = adatom_gamma0_estimate(hz_to_rad(1e12), 100.0 * c::atomic_mass_unit, 3240.0, 19300.0);
        CHECK(g0 == doctest::Approx(3e10).epsilon(0.3));
    }
    const auto model = gold_adatom();
    const AdatomSolver solver(model, all_bound_levels);
    SUBCASE("harmonic and numerical vibration frequency") {
        CHECK(rad_to_hz(adatom_nu10_harmonic(model)) == doctest::Approx(0.9e12).epsilon(0.05));
        CHECK(rad_to_hz(solver.nu10()) == doctest::Approx(0.9e12).epsilon(0.1));
        CHECK(solver.nu10() < adatom_nu10_harmonic(model));
        CHECK(solver.levels() == solver.bound_states());
        CHECK(solver.levels() > 10);
    }
    SUBCASE("detailed balance and zero temperature") {
        for (double t : {5.0, 77.0, 300.0, 600.0}) {
            for (auto [n, m] : {std::pair{1, 0}, std::pair{3, 1}, std::pair{7, 2}}) {
                const auto r = solver.rates(n, m, t);
                const double x = c::hbar * solver.nu(n, m) / (c::boltzmann * t);
                CHECK(r.up / r.down == doctest::Approx(std::exp(-x)).epsilon(1e-10));
            }
        }
        CHECK(solver.rates(1, 0, 0.0).up == 0.0);
        CHECK(solver.rates(1, 0, 0.0).down > 0.0);
        const auto r = adatom_rates(model, 1, 0, 300.0);
        CHECK(r.down == doctest::Approx(solver.rates(1, 0, 300.0).down).epsilon(1e-6));
    }
    SUBCASE("no bound states") {
        auto shallow = model;
        shallow.u0 = ev_to_joule(1e-6);
        CHECK_THROWS_AS(AdatomSolver(shallow, all_bound_levels), DomainError);
    }
}

TEST_CASE("adatom dipole spectrum") {
    auto model = gold_adatom();
    model.gamma0_override = hz_to_rad(1e7);
    const AdatomSolver solver(model, all_bound_levels);
    const double g0 = solver.gamma0();
    CHECK(g0 == doctest::Approx(hz_to_rad(1e7)).epsilon(1e-9));
    SUBCASE("field noise at 100 um") {
        const double s = dipole_layer_field_spectrum(model.sigma_d, 100e-6, solver.dipole_spectrum(w1, 300.0),
                                                     FieldAxis::perpendicular);
        CHECK(within_decade(s, 1e-13));
        CHECK(adatom_spectrum(model, w1, 300.0, all_bound_levels, 100e-6, FieldAxis::perpendicular) ==
              doctest::Approx(s).epsilon(1e-9));
    }
    SUBCASE("flat below and omega^-2 above the relaxation rate") {
        auto s = [&](double w) { return solver.dipole_spectrum(w, 300.0); };
        CHECK(std::abs(log_derivative(s, 1e-3 * g0)) < 0.05);
        CHECK(-log_derivative(s, 1e3 * g0) == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("two-level limit at low temperature") {
        for (double t : {40.0, 60.0}) {
            CHECK(solver.dipole_spectrum(w1, t) == doctest::Approx(solver.two_level_low_temperature(w1, t)).epsilon(0.05));
        }
    }
    SUBCASE("multilevel enhancement grows with temperature") {
        double last = 1.0;
        for (double t : {200.0, 300.0, 400.0, 500.0}) {
            const double ratio = solver.dipole_spectrum(w1, t) / solver.two_level_spectrum(w1, t);
            CHECK(ratio > last);
            last = ratio;
        }
    }
}

TEST_CASE("adatom diffusion kernels") {
    SUBCASE("planar asymptotes") {
        CHECK(diffusion_kernel_numeric(1e-4, inf, FieldAxis::perpendicular) == doctest::Approx(1.0).epsilon(0.03));
        for (double w : {1e2, 1e3, 1e4}) {
            CHECK(diffusion_kernel_numeric(w, inf, FieldAxis::perpendicular) == doctest::Approx(7.5 / (w * w)).epsilon(0.03));
            CHECK(diffusion_kernel_numeric(w, inf, FieldAxis::parallel) == doctest::Approx(3.75 / (w * w)).epsilon(0.03));
        }
        for (double w : {1e-3, 1.0, 1e3})
            CHECK(diffusion_kernel_analytic(w, inf, FieldAxis::parallel) ==
                  doctest::Approx(0.5 * diffusion_kernel_analytic(w, inf, FieldAxis::perpendicular)).epsilon(1e-15));
    }
    SUBCASE("disc low-frequency logarithm") {
        // slope in ln(omega~) fixed by the disc's net transform g(0) = 2 pi R^2 / (1 + R^2)^(3/2)
        for (double r : {0.1, 0.3}) {
            const double lo = diffusion_kernel_numeric(1e-8, r, FieldAxis::perpendicular);
            const double hi = diffusion_kernel_numeric(1e-6, r, FieldAxis::perpendicular);
            const double slope = (lo - hi) / (0.5 * std::log(100.0));
            CHECK(slope == doctest::Approx(4.0 * std::pow(r, 4) / std::pow(1.0 + r * r, 3)).epsilon(0.01));
        }
    }
    SUBCASE("disc closed forms are the small-radius limit") {
        const double rel_01 = diffusion_kernel_numeric(1e-3, 0.1, FieldAxis::parallel) /
                              diffusion_kernel_asymptote(1e-3, 0.1, FieldAxis::parallel, DiffusionRegime::low) - 1.0;
        const double rel_003 = diffusion_kernel_numeric(1e-3, 0.03, FieldAxis::parallel) /
                               diffusion_kernel_asymptote(1e-3, 0.03, FieldAxis::parallel, DiffusionRegime::low) - 1.0;
        CHECK(std::abs(rel_003) < 0.005);
        CHECK(rel_01 / rel_003 == doctest::Approx(std::pow(0.1 / 0.03, 2)).epsilon(0.2));
        CHECK(diffusion_kernel_numeric(1e5, 0.03, FieldAxis::perpendicular) ==
              doctest::Approx(diffusion_kernel_asymptote(1e5, 0.03, FieldAxis::perpendicular, DiffusionRegime::high)).epsilon(0.01));
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(diffusion_kernel_numeric(0.0, inf, FieldAxis::perpendicular), DomainError);
    }
}

TEST_CASE("adatom diffusion spectra") {
    const double d = 100e-6;
    CHECK(diffusion_constant(1e-7, ev_to_joule(0.17862), 0.0, 300.0) == doctest::Approx(1e-10).epsilon(1e-3));
    CHECK(diffusion_constant(1e-7, ev_to_joule(0.2), 3e-12, 0.0) == doctest::Approx(3e-12));
    // D / d^2 = 1e-2 rad/s, far below any trap frequency
    CHECK(diffusion_crossover(1e-10, d) == doctest::Approx(1e-2));
    SUBCASE("planar") {
        const auto m = diffusion(DiffusionGeometry::planar);
        const double s = diffusion_spectrum(m, w1, 300.0, d, FieldAxis::perpendicular);
        const double expected = 15.0 * m.mu * m.mu * m.sigma_d * 1e-10 /
                                (16.0 * c::pi * c::epsilon0 * c::epsilon0 * std::pow(d, 6) * w1 * w1);
        CHECK(s == doctest::Approx(expected).epsilon(1e-9));
        CHECK(within_decade(s, 1e-18));
        CHECK(diffusion_spectrum(m, w1, 300.0, d, FieldAxis::parallel) == doctest::Approx(0.5 * s));
        CHECK(local_beta([&](double x) { return diffusion_spectrum(m, w1, 300.0, x, FieldAxis::perpendicular); }, d) ==
              doctest::Approx(6.0).epsilon(1e-6));
        auto numeric = m;
        numeric.kernel = DiffusionKernel::numeric;
        CHECK(diffusion_spectrum(numeric, w1, 300.0, d, FieldAxis::perpendicular) == doctest::Approx(s).epsilon(0.03));
    }
    SUBCASE("needle tip") {
        const auto m = diffusion(DiffusionGeometry::needle, 0.1 * d);
        const double s = diffusion_spectrum(m, w1, 300.0, d, FieldAxis::perpendicular);
        const double expected = m.mu * m.mu * m.sigma_d * m.radius * std::sqrt(1e-10) /
                                (std::sqrt(2.0) * c::pi * c::epsilon0 * c::epsilon0 * std::pow(d, 6) * std::pow(w1, 1.5));
        CHECK(s == doctest::Approx(expected).epsilon(1e-9));
        CHECK(-log_derivative([&](double w) { return diffusion_spectrum(m, w, 300.0, d, FieldAxis::perpendicular); }, w1) ==
              doctest::Approx(1.5).epsilon(1e-6));
    }
    SUBCASE("patches") {
        const auto p1 = diffusion(DiffusionGeometry::patches, 1e-6);
        const auto p10 = diffusion(DiffusionGeometry::patches, 10e-6);
        const double s1 = diffusion_spectrum(p1, w1, 300.0, d, FieldAxis::perpendicular);
        const double s10 = diffusion_spectrum(p10, w1, 300.0, d, FieldAxis::perpendicular);
        CHECK(s1 / s10 == doctest::Approx(10.0).epsilon(1e-9));
        CHECK(local_beta([&](double x) { return diffusion_spectrum(p1, w1, 300.0, x, FieldAxis::perpendicular); }, d) ==
              doctest::Approx(4.0).epsilon(1e-6));
        CHECK(s1 > 1e-13);
        CHECK(s1 < 1e-11);
        CHECK(s10 > 1e-14);
        CHECK(s10 < 1e-12);
    }
}

TEST_CASE("surface spectra are non-negative over random draws") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double w = hz_to_rad(std::pow(10.0, 3.0 + 4.0 * u(rng)));
        const double t = 5.0 + 500.0 * u(rng);
        const double d = std::pow(10.0, -5.0 + 2.0 * u(rng));
        PatchModel pm{u(rng), 1e-12 * u(rng) + 1e-15, u(rng), u(rng) < 0.5 ? PatchCorrelation::step : PatchCorrelation::exponential,
                      d * std::pow(10.0, -2.0 + 3.0 * u(rng))};
        CHECK(patch_spectrum_small(pm, d, FieldAxis::perpendicular) >= 0.0);
        CHECK(patch_spectrum_two_plates(pm, d, FieldAxis::parallel, 1e-6) >= 0.0);
        auto e = uniform_tlf(0.2 + u(rng));
        CHECK(tlf_ensemble_spectrum(e, w, t) >= 0.0);
        CHECK(tlf_single_spectrum(1e-29, u(rng) * 1e-20, 1e-6 * u(rng) + 1e-12, t, w) >= 0.0);
        auto dm = diffusion(DiffusionGeometry::planar);
        dm.d_t = std::pow(10.0, -14.0 + 6.0 * u(rng));
        CHECK(diffusion_spectrum(dm, w, t, d, FieldAxis::perpendicular) >= 0.0);
        if (i % 10 == 0)
            CHECK(diffusion_kernel_numeric(std::pow(10.0, -3.0 + 5.0 * u(rng)), 0.05 + u(rng), FieldAxis::parallel, 1e-5) >= 0.0);
    }
}
