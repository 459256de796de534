#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ionnoise {

struct GeometryModel {
    enum class Kind { plates, spheres, needles };
    Kind kind = Kind::plates;
    double separation = 0.0;  // s for plates and spheres, 2d for needles
    double r_el = 0.0;        // electrode radius (spheres, needles)

    static GeometryModel plates(double s);
    static GeometryModel spheres(double r_el, double s);
    static GeometryModel needles(double r_el, double d);

    double d() const { return 0.5 * separation; }
    GeometryModel at_distance(double d) const;
    void validate() const;
    // spheres need s >> R_el; flagged when s < 10 R_el
    bool valid_approximation() const;
};

const char* to_string(GeometryModel::Kind kind);

struct CharacteristicLength {
    double d_char = 0.0;  // D, m
    double kappa = 0.0;   // 2d / D
    std::vector<std::string> warnings;
};

CharacteristicLength characteristic_length(const GeometryModel& geom);

double needle_v0(double r_el, double d);

// Central log derivative d ln f / d ln x with step rel_step in ln x.
double log_derivative(const std::function<double(double)>& f, double x, double rel_step = 1e-3);

// -d ln S / d ln d
double local_beta(const std::function<double(double)>& spectrum_vs_d, double d, double rel_step = 1e-3);

struct PowerLawFit {
    double exponent = 0.0;
    double uncertainty = 0.0;   // standard error of the slope
    double prefactor = 0.0;     // S = prefactor * x^exponent
    double rms_residual = 0.0;  // in ln S
};

// Least squares in log-log space; at least three positive samples.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& samples);

}  // namespace ionnoise
