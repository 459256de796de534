#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ionnoise/config.hpp"

namespace ionnoise {

struct MeasurementFlags {
    bool upper_limit = false;
    bool post_cleaning = false;
    bool cryogenic = false;
};

struct MeasurementRecord {
    std::string label;
    double d = 0.0;            // m
    double omega = 0.0;        // rad/s
    double temperature = 0.0;  // K
    double s_e = 0.0;          // V^2 m^-2 Hz^-1
    std::string species;
    MeasurementFlags flags;
};

inline constexpr const char* dataset_header = "label,d_m,omega_rad_s,T_K,S_E,species,flags";

// flags column: ';'-separated subset of upper_limit, post_cleaning, cryogenic
std::vector<MeasurementRecord> read_dataset(std::istream& in, const std::string& source = "<dataset>");
std::vector<MeasurementRecord> load_dataset(const std::string& path);
void write_dataset(std::ostream& out, const std::vector<MeasurementRecord>& records);

struct ComparisonRow {
    MeasurementRecord record;
    double predicted = 0.0;  // total S_E of the configured mechanisms at the record point
    double ratio = 0.0;      // measured / predicted
    // "ok", "within_limit" / "exceeds_limit" for upper limits, "error"
    std::string status;
    std::string error;
};

// Sorted by d, then label.
std::vector<ComparisonRow> dataset_compare(const std::vector<MeasurementRecord>& records,
                                           const TrapConfiguration& config);

}  // namespace ionnoise
