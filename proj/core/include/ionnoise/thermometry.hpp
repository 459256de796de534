#pragma once

#include <cstdint>
#include <vector>

namespace ionnoise {

struct PhononDistribution {
    std::vector<double> p;  // P_n for n = 0 .. n_max

    // P_n = nbar^n / (1 + nbar)^(n+1), truncated at max(50, 20 nbar) and renormalised
    static PhononDistribution thermal(double nbar);
    static PhononDistribution fock(int n);
    // throws DomainError unless P_n >= 0 and sum(P_n) = 1 within 1e-9
    static PhononDistribution from_probabilities(std::vector<double> p);

    int n_max() const { return static_cast<int>(p.size()) - 1; }
    double mean() const;
};

enum class Sideband { red, blue };

// Rabi frequency of n -> n -+ order at lowest order in eta, in units of Omega_L
double sideband_rabi_factor(int n, double eta, Sideband side, int order = 1);

// (1/2)(1 - sum P_n cos(Omega_{n, n-+k} t))
double sideband_signal(const PhononDistribution& dist, double eta, double omega_l, double t,
                       Sideband side, int order = 1);

// eta^2 (2 nbar + 1) below the threshold
bool lamb_dicke_valid(const PhononDistribution& dist, double eta, double threshold = 0.1);

// Solves (nbar / (1 + nbar))^k = p_red / p_blue
double ratio_thermometry(double p_red, double p_blue, int order = 1);

// sum P_n exp(-eta^2/2) L_n(eta^2)
double carrier_contrast(const PhononDistribution& dist, double eta);
double carrier_contrast_thermal(double nbar, double eta);

struct HeatingMeasurementConfig {
    double gamma_h = 0.0;    // 1/s
    double nbar_bath = 1e6;  // N; n(t) relaxes to it at rate gamma_h / N
    double nbar0 = 0.05;
    std::vector<double> wait_times;
    int shots = 100;
    std::uint64_t seed = 0;
    double eta = 0.1;
    double omega_l = 2.0 * 3.14159265358979323846 * 1e5;  // rad/s
    int order = 1;
    // guard on the largest estimated nbar
    double nbar_validity_limit = 2.0;
};

struct HeatingPoint {
    double wait_time = 0.0;
    double nbar_true = 0.0;
    double p_red = 0.0;
    double p_blue = 0.0;
    int red_counts = 0;
    int blue_counts = 0;
    bool used = false;
    double nbar = 0.0;
    double sigma = 0.0;
};

struct HeatingEstimate {
    double rate = 0.0;         // fitted dn/dt, 1/s
    double uncertainty = 0.0;  // 1 sigma
    double intercept = 0.0;
    bool valid = true;         // false when nbar exceeds the validity limit
    std::vector<HeatingPoint> points;
};

// Binomial shot noise on red and blue sideband probabilities at the blue pi-time,
// ratio thermometry per wait time, weighted linear fit of nbar(t).
HeatingEstimate simulate_heating_measurement(const HeatingMeasurementConfig& cfg);

}  // namespace ionnoise
