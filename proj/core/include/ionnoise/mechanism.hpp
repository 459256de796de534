#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ionnoise/adatom.hpp"
#include "ionnoise/circuit.hpp"
#include "ionnoise/diffusion.hpp"
#include "ionnoise/geometry.hpp"
#include "ionnoise/patch.hpp"
#include "ionnoise/planar.hpp"
#include "ionnoise/tlf.hpp"

namespace ionnoise {

struct EvalPoint {
    double omega = 0.0;        // rad/s
    double d = 0.0;            // m
    double temperature = 0.0;  // K
};

// Single-sided S_E(omega; d, T) of one configured noise source.
class NoiseMechanism {
public:
    virtual ~NoiseMechanism() = default;
    virtual std::string kind() const = 0;
    virtual double spectrum(const EvalPoint& p) const = 0;
    virtual std::vector<std::string> warnings(const EvalPoint&) const { return {}; }

    std::string label;
    std::optional<double> distance;  // row-specific d, m
};

using MechanismPtr = std::shared_ptr<const NoiseMechanism>;

// Characteristic length D(d) of the trap geometry; with an explicit D at the row distance
// the geometry only sets how D varies with d.
struct CharacteristicLengthSource {
    GeometryModel geometry;
    std::optional<double> d_char;
    double anchor_d = 0.0;

    double at(double d) const;
};

enum class PatchMethod { small, two_plates, planar };
PatchMethod parse_patch_method(const std::string& tag);
const char* to_string(PatchMethod method);

struct JohnsonParameters {
    double resistance = 0.0;             // Ohm at reference_temperature
    double reference_temperature = 300.0;
    double temperature_exponent = 1.0;   // R ~ T^exponent
    std::vector<CircuitElement> components;
};

MechanismPtr make_blackbody();
MechanismPtr make_surface_blackbody(MaterialProperties material, FieldAxis axis);
MechanismPtr make_emi(ExternalNoiseFactor fa);
MechanismPtr make_pickup(ExternalNoiseFactor fa, double loop_area, CharacteristicLengthSource d_char);
MechanismPtr make_johnson(JohnsonParameters params, CharacteristicLengthSource d_char);
MechanismPtr make_technical(double s_v_source, double attenuation_db, CharacteristicLengthSource d_char);
MechanismPtr make_space_charge(double tau_e, double current);
MechanismPtr make_patch(PatchModel model, PatchMethod method, FieldAxis axis);
MechanismPtr make_tlf(TLFEnsemble ensemble, FieldAxis axis);
MechanismPtr make_adatom(AdatomModel model, int levels, FieldAxis axis);
MechanismPtr make_diffusion(DiffusionModel model, FieldAxis axis);

MechanismPtr with_label(MechanismPtr m, std::string label, std::optional<double> distance);

}  // namespace ionnoise
