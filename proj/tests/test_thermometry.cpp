#include <doctest.h>

#include <cmath>
#include <vector>

#include "ionnoise/errors.hpp"
#include "ionnoise/thermometry.hpp"

using namespace ionnoise;

namespace {

const double pi = 3.14159265358979323846;

// direct thermal sum to n = 200 with lowest-order sideband Rabi frequencies eta sqrt(n), eta sqrt(n + 1)
double direct_signal(double nbar, double eta, double omega_l, double t, bool red) {
    double s = 0.0, norm = 0.0;
    for (int n = 0; n <= 200; ++n) {
        const double p = std::pow(nbar / (1.0 + nbar), n) / (1.0 + nbar);
        const double rabi = eta * std::sqrt(red ? n : n + 1.0) * omega_l;
        s += p * std::pow(std::sin(0.5 * rabi * t), 2);
        norm += p;
    }
    return s / norm;
}

HeatingMeasurementConfig reference_measurement(std::uint64_t seed) {
    HeatingMeasurementConfig c;
    c.gamma_h = 10.0;
    c.wait_times = {0.0, 10e-3, 20e-3, 50e-3};
    c.shots = 500;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("phonon distributions") {
    for (double nbar : {0.0, 0.3, 2.0, 10.0}) {
        const auto d = PhononDistribution::thermal(nbar);
        double total = 0.0;
        for (double p : d.p) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.mean() == doctest::Approx(nbar).epsilon(1e-6));
    }
    CHECK(PhononDistribution::fock(3).mean() == doctest::Approx(3.0));
    CHECK_THROWS_AS(PhononDistribution::thermal(-1.0), DomainError);
    CHECK_THROWS_AS(PhononDistribution::from_probabilities({0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(PhononDistribution::from_probabilities({1.2, -0.2}), DomainError);
}

TEST_CASE("sideband signals") {
    const double eta = 0.1, omega_l = 2.0 * pi * 1e5;
    for (double nbar : {0.05, 0.5, 3.0}) {
        const auto dist = PhononDistribution::thermal(nbar);
        for (double t : {1e-6, 2.5e-5, 5e-5, 1.3e-4}) {
            CHECK(sideband_signal(dist, eta, omega_l, t, Sideband::red) ==
                  doctest::Approx(direct_signal(nbar, eta, omega_l, t, true)).epsilon(1e-9));
            CHECK(sideband_signal(dist, eta, omega_l, t, Sideband::blue) ==
                  doctest::Approx(direct_signal(nbar, eta, omega_l, t, false)).epsilon(1e-9));
        }
    }
    SUBCASE("ground state") {
        const auto g = PhononDistribution::fock(0);
        const double pi_time = pi / (eta * omega_l);
        CHECK(sideband_signal(g, eta, omega_l, pi_time, Sideband::red) == 0.0);
        CHECK(sideband_signal(g, eta, omega_l, pi_time, Sideband::blue) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("signals are probabilities") {
        for (double nbar : {0.0, 1.0, 20.0})
            for (double t = 0.0; t < 1e-3; t += 3.7e-5)
                for (auto side : {Sideband::red, Sideband::blue}) {
                    const double s = sideband_signal(PhononDistribution::thermal(nbar), eta, omega_l, t, side);
                    CHECK(s >= 0.0);
                    CHECK(s <= 1.0);
                }
    }
    SUBCASE("Rabi factors") {
        CHECK(sideband_rabi_factor(4, 0.1, Sideband::red) == doctest::Approx(0.2));
        CHECK(sideband_rabi_factor(4, 0.1, Sideband::blue) == doctest::Approx(0.1 * std::sqrt(5.0)));
        CHECK(sideband_rabi_factor(1, 0.1, Sideband::red, 2) == 0.0);
        CHECK(sideband_rabi_factor(2, 0.1, Sideband::red, 2) == doctest::Approx(0.01 * std::sqrt(2.0) / 2.0));
        CHECK_THROWS_AS(sideband_rabi_factor(2, 0.1, Sideband::red, 0), DomainError);
    }
}

TEST_CASE("ratio thermometry") {
    CHECK(ratio_thermometry(0.25, 0.5) == doctest::Approx(1.0));
    CHECK(ratio_thermometry(0.25, 1.0, 2) == doctest::Approx(1.0));
    CHECK(ratio_thermometry(0.9, 1.0) == doctest::Approx(9.0));
    // exact for a thermal state at any probe time
    const double eta = 0.1, omega_l = 2.0 * pi * 1e5;
    for (double nbar : {0.05, 0.7, 4.0}) {
        const auto dist = PhononDistribution::thermal(nbar);
        const double t = 0.8 * pi / (eta * omega_l);
        const double r = sideband_signal(dist, eta, omega_l, t, Sideband::red);
        const double b = sideband_signal(dist, eta, omega_l, t, Sideband::blue);
        CHECK(ratio_thermometry(r, b) == doctest::Approx(dist.mean()).epsilon(1e-9));
    }
    CHECK_THROWS_AS(ratio_thermometry(0.5, 0.4), NonThermalStateError);
    CHECK_THROWS_AS(ratio_thermometry(0.5, 0.5), NonThermalStateError);
    CHECK_THROWS_AS(ratio_thermometry(-0.1, 0.5), DomainError);
}

TEST_CASE("carrier contrast") {
    CHECK(carrier_contrast(PhononDistribution::fock(0), 0.1) == doctest::Approx(0.9950).epsilon(1e-4));
    CHECK(carrier_contrast(PhononDistribution::fock(0), 0.1) == doctest::Approx(std::exp(-0.005)).epsilon(1e-12));
    // the Laguerre generating function makes the thermal sum exp(-eta^2 (nbar + 1/2))
    for (double nbar : {0.5, 10.0}) {
        CHECK(carrier_contrast(PhononDistribution::thermal(nbar), 0.1) ==
              doctest::Approx(carrier_contrast_thermal(nbar, 0.1)).epsilon(1e-4));
    }
    CHECK(lamb_dicke_valid(PhononDistribution::thermal(1.0), 0.1));
    CHECK_FALSE(lamb_dicke_valid(PhononDistribution::thermal(10.0), 0.1));
}

TEST_CASE("simulated heating-rate measurement") {
    SUBCASE("noise-free limit") {
        auto c = reference_measurement(1);
        c.shots = 1000000000;
        const auto e = simulate_heating_measurement(c);
        CHECK(e.rate == doctest::Approx(10.0).epsilon(0.01));
        CHECK(e.valid);
        CHECK(e.points.size() == 4);
        for (const auto& p : e.points) CHECK(p.used);
    }
    SUBCASE("unbiased with honest error bars") {
        const int runs = 200;
        double mean = 0.0, var = 0.0, sigma = 0.0;
        std::vector<double> rates;
        for (int s = 0; s < runs; ++s) {
            const auto e = simulate_heating_measurement(reference_measurement(1000 + s));
            rates.push_back(e.rate);
            sigma += e.uncertainty / runs;
        }
        for (double r : rates) mean += r / runs;
        for (double r : rates) var += (r - mean) * (r - mean) / (runs - 1);
        const double spread = std::sqrt(var);
        CHECK(std::abs(mean - 10.0) < 3.0 * spread / std::sqrt(runs));
        CHECK(sigma == doctest::Approx(spread).epsilon(0.2));
    }
    SUBCASE("no heating") {
        auto c = reference_measurement(5);
        c.gamma_h = 0.0;
        const auto e = simulate_heating_measurement(c);
        CHECK(std::abs(e.rate) < 3.0 * e.uncertainty);
    }
    SUBCASE("deterministic under a fixed seed") {
        const auto a = simulate_heating_measurement(reference_measurement(9));
        const auto b = simulate_heating_measurement(reference_measurement(9));
        CHECK(a.rate == b.rate);
        CHECK(a.points[2].red_counts == b.points[2].red_counts);
    }
    SUBCASE("validity guard for large occupations") {
        auto c = reference_measurement(2);
        c.gamma_h = 100.0;
        c.shots = 100000;
        const auto e = simulate_heating_measurement(c);
        CHECK(e.points.back().nbar_true == doctest::Approx(5.05).epsilon(1e-3));
        CHECK_FALSE(e.valid);
    }
    SUBCASE("invalid requests") {
        auto c = reference_measurement(2);
        c.shots = 0;
        CHECK_THROWS_AS(simulate_heating_measurement(c), InputError);
        c = reference_measurement(2);
        c.wait_times.clear();
        CHECK_THROWS_AS(simulate_heating_measurement(c), InputError);
        c = reference_measurement(2);
        c.gamma_h = -1.0;
        CHECK_THROWS_AS(simulate_heating_measurement(c), DomainError);
    }
}
