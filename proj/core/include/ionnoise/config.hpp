#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ionnoise/geometry.hpp"
#include "ionnoise/mechanism.hpp"
#include "ionnoise/thermometry.hpp"
#include "ionnoise/trap.hpp"

namespace ionnoise {

struct TrapConfiguration {
    IonSpecies species;
    DriveParameters drive;
    GeometryModel geometry;
    double temperature = 300.0;             // K
    double omega = 2.0 * 3.14159265358979323846 * 1e6;  // evaluation frequency, rad/s
    std::vector<MechanismPtr> mechanisms;
    std::optional<HeatingMeasurementConfig> thermometry;
    std::vector<std::string> warnings;

    double d() const { return geometry.d(); }
    EvalPoint reference_point() const { return {omega, d(), temperature}; }
};

IonSpecies species_preset(const std::string& label);

// Strict JSON: unknown keys are rejected and every violation is reported in one ValidationError.
TrapConfiguration parse_config(const std::string& text, const std::string& source = "<config>");
TrapConfiguration load_config(const std::string& path);

}  // namespace ionnoise
