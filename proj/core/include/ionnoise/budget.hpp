#pragma once

#include <string>
#include <vector>

#include "ionnoise/config.hpp"
#include "ionnoise/geometry.hpp"

namespace ionnoise {

struct BudgetRow {
    std::string kind;
    std::string label;
    EvalPoint point;
    double s_e = 0.0;      // V^2 m^-2 Hz^-1
    double gamma_h = 0.0;  // 1/s for the configured ion at omega
    // S ~ omega^-alpha d^-beta T^gamma, local log derivatives
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::vector<std::string> warnings;
    std::string error;  // non-empty when the row failed to evaluate

    bool ok() const { return error.empty(); }
};

struct BudgetReport {
    std::vector<BudgetRow> rows;
    double total_s_e = 0.0;  // sum over successful rows
    double total_gamma_h = 0.0;
    std::vector<std::string> warnings;
};

// Evaluates one mechanism at its row point; failures are captured in the row.
BudgetRow evaluate_row(const NoiseMechanism& m, const EvalPoint& p, const IonSpecies& ion,
                       double rel_step = 1e-3);

BudgetReport noise_budget(const TrapConfiguration& config);

enum class ScanVariable { omega, d, temperature };
ScanVariable parse_scan_variable(const std::string& tag);
const char* to_string(ScanVariable v);

struct ScanRequest {
    ScanVariable variable = ScanVariable::omega;
    double lo = 0.0;
    double hi = 0.0;
    int points = 11;
    double residual_threshold = 0.02;  // rms log residual flagging non-power-law behaviour
    int threads = 0;                   // 0 picks the hardware concurrency
};

struct ScanSeries {
    std::string kind;
    std::string label;
    std::vector<double> s_e;  // NaN where the evaluation failed
    std::vector<std::string> errors;
    bool fitted = false;
    PowerLawFit fit;
    double exponent = 0.0;  // in the ansatz sign convention (alpha, beta or gamma)
    bool non_power_law = false;
};

struct ScanResult {
    ScanVariable variable = ScanVariable::omega;
    std::vector<double> x;
    std::vector<ScanSeries> series;  // one per mechanism, then the total
};

// Log-spaced scan; distances apply to every row, other coordinates stay at each row's point.
ScanResult scan_and_fit(const TrapConfiguration& config, const ScanRequest& request);

}  // namespace ionnoise
