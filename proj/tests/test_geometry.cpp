#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ionnoise/circuit.hpp"
#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"
#include "ionnoise/geometry.hpp"

using namespace ionnoise;

TEST_CASE("characteristic lengths") {
    const double d = 100e-6;
    SUBCASE("plates") {
        const auto c = characteristic_length(GeometryModel::plates(2.0 * d));
        CHECK(c.d_char == doctest::Approx(2.0 * d));
        CHECK(c.kappa == doctest::Approx(1.0));
        CHECK(c.warnings.empty());
    }
    SUBCASE("spheres") {
        const auto c = characteristic_length(GeometryModel::spheres(0.1 * d, 2.0 * d));
        CHECK(c.kappa == doctest::Approx(0.1));
        CHECK(c.d_char == doctest::Approx(20.0 * d));
        CHECK(GeometryModel::spheres(0.1 * d, 2.0 * d).valid_approximation());
        const auto close = characteristic_length(GeometryModel::spheres(d, 3.0 * d));
        CHECK_FALSE(close.warnings.empty());
    }
    SUBCASE("needles against a 20-digit evaluation") {
        const auto c = characteristic_length(GeometryModel::needles(3e-6, d));
        CHECK(c.d_char == doctest::Approx(4.9807575756616458304e-4).epsilon(1e-13));
        CHECK(c.kappa == doctest::Approx(0.40154534116917328571).epsilon(1e-13));
        CHECK(needle_v0(3e-6, d) > 0.0);
        CHECK(needle_v0(3e-6, d) < 1.0);
    }
    SUBCASE("needle limits") {
        // blunt tips approach plate-like D = 2d, sharp tips grow logarithmically
        const double blunt = characteristic_length(GeometryModel::needles(1e6 * d, d)).d_char;
        CHECK(blunt == doctest::Approx(2.0 * d).epsilon(1e-5));
        const double sharp1 = characteristic_length(GeometryModel::needles(1e-6 * d, d)).d_char;
        const double sharp2 = characteristic_length(GeometryModel::needles(1e-8 * d, d)).d_char;
        CHECK((sharp2 - sharp1) / d == doctest::Approx(std::log(100.0)).epsilon(1e-4));
    }
    SUBCASE("kappa D = 2d for every geometry") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 300; ++i) {
            const double dd = std::pow(10.0, -6.0 + 3.0 * u(rng));
            const double r = dd * std::pow(10.0, -3.0 + 3.0 * u(rng));
            for (const auto& g : {GeometryModel::plates(2.0 * dd), GeometryModel::spheres(r, 2.0 * dd),
                                  GeometryModel::needles(r, dd)}) {
                const auto c = characteristic_length(g);
                CHECK(c.kappa * c.d_char == doctest::Approx(2.0 * dd).epsilon(1e-12));
            }
        }
    }
    SUBCASE("invalid geometry") {
        CHECK_THROWS_AS(characteristic_length(GeometryModel::plates(0.0)), DomainError);
        CHECK_THROWS_AS(characteristic_length(GeometryModel::needles(0.0, d)), DomainError);
    }
}

TEST_CASE("local exponents") {
    auto p4 = [](double x) { return 3.0 * std::pow(x, -4.0); };
    auto p2 = [](double x) { return std::pow(x, -2.5); };
    CHECK(local_beta(p4, 1e-4) == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(local_beta([&](double x) { return p4(x) * p2(x); }, 1e-4) ==
          doctest::Approx(local_beta(p4, 1e-4) + local_beta(p2, 1e-4)).epsilon(1e-9));
    CHECK(log_derivative([](double x) { return std::exp(x); }, 2.0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(local_beta([](double) { return 0.0; }, 1e-4), DomainError);
    CHECK_THROWS_AS(local_beta(p4, -1.0), DomainError);
}

TEST_CASE("power-law fits") {
    std::vector<std::pair<double, double>> exact;
    for (double x = 1.0; x < 100.0; x *= 1.7) exact.push_back({x, 5.0 * std::pow(x, -2.0)});
    const auto f = fit_power_law(exact);
    CHECK(f.exponent == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(f.uncertainty < 1e-9);
    CHECK(f.prefactor == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(f.rms_residual < 1e-9);
    CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}, {2.0, 0.5}}), InputError);
    CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}, {2.0, -0.5}, {3.0, 0.2}}), InputError);
    SUBCASE("coverage with 10% multiplicative noise") {
        // two-sigma coverage of the slope is 95.3% at 198 degrees of freedom
        std::mt19937_64 rng(17);
        std::normal_distribution<double> n(0.0, 0.1);
        int covered = 0;
        const int trials = 20000;
        for (int t = 0; t < trials; ++t) {
            std::vector<std::pair<double, double>> s;
            for (int i = 0; i < 200; ++i) {
                const double x = std::pow(10.0, 2.0 * i / 199.0);
                s.push_back({x, std::pow(x, -1.5) * (1.0 + n(rng))});
            }
            const auto r = fit_power_law(s);
            if (std::abs(r.exponent + 1.5) <= 2.0 * r.uncertainty) ++covered;
        }
        CHECK(covered >= 0.95 * trials);
    }
}

TEST_CASE("Johnson noise through needle electrodes") {
    const double r_el = 3e-6;
    auto johnson = [](double r, double d) {
        return johnson_field_spectrum(0.1, 300.0, characteristic_length(GeometryModel::needles(r, d)).d_char);
    };
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back(30e-6 * std::pow(200.0 / 30.0, i / 11.0));
    auto beta = [&](double r, double offset) {
        std::vector<std::pair<double, double>> s;
        for (double d : grid) s.push_back({d, johnson(r, d + offset)});
        return -fit_power_law(s).exponent;
    };
    CHECK(beta(r_el, 0.0) == doctest::Approx(2.4).epsilon(0.05 / 2.4));
    for (double d : {30e-6, 100e-6, 200e-6}) {
        const double lb = local_beta([&](double x) { return johnson(r_el, x); }, d);
        CHECK(lb > 2.0);
        CHECK(lb < 3.0);
    }
    SUBCASE("distance offset and tip radius uncertainty") {
        // an unknown common offset of the ion height and the tip radius
        for (double off : {-5e-6, 5e-6})
            for (double r : {2e-6, 4e-6}) CHECK(std::abs(beta(r, off) - 2.4) <= 0.2);
        std::mt19937_64 rng(23);
        std::normal_distribution<double> off(0.0, 5e-6), rad(r_el, 1e-6);
        std::vector<double> b;
        for (int t = 0; t < 2000; ++t) {
            double r = rad(rng);
            while (r <= 0.0) r = rad(rng);
            b.push_back(beta(r, off(rng)));
        }
        double mean = 0.0, var = 0.0;
        for (double x : b) mean += x / b.size();
        for (double x : b) var += (x - mean) * (x - mean) / (b.size() - 1);
        CHECK(std::abs(mean - 2.4) <= 0.1);
        CHECK(std::sqrt(var) >= 0.1);
        CHECK(std::sqrt(var) <= 0.3);
    }
}
