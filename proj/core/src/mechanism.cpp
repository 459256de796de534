#include "ionnoise/mechanism.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"

namespace ionnoise {

double CharacteristicLengthSource::at(double d) const {
    const double here = characteristic_length(geometry.at_distance(d)).d_char;
    if (!d_char) return here;
    const double anchor = characteristic_length(geometry.at_distance(anchor_d)).d_char;
    return *d_char * here / anchor;
}

PatchMethod parse_patch_method(const std::string& tag) {
    if (tag == "small") return PatchMethod::small;
    if (tag == "two_plates") return PatchMethod::two_plates;
    if (tag == "planar") return PatchMethod::planar;
    throw InputError("unknown patch method '" + tag + "'");
}

const char* to_string(PatchMethod method) {
    switch (method) {
        case PatchMethod::small: return "small";
        case PatchMethod::two_plates: return "two_plates";
        case PatchMethod::planar: return "planar";
    }
    return "";
}

namespace {

class Blackbody final : public NoiseMechanism {
public:
    std::string kind() const override { return "blackbody"; }
    double spectrum(const EvalPoint& p) const override { return blackbody_spectrum(p.omega, p.temperature); }
};

class SurfaceBlackbody final : public NoiseMechanism {
public:
    SurfaceBlackbody(MaterialProperties m, FieldAxis a) : material_(std::move(m)), axis_(a) {}
    std::string kind() const override { return "surface_blackbody"; }
    double spectrum(const EvalPoint& p) const override {
        return surface_blackbody_spectrum(p.omega, p.temperature, p.d, material_, axis_);
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        if (blackbody_low_frequency(p.omega, p.temperature)) return {};
        return {"surface_blackbody: hbar omega not << kT"};
    }

private:
    MaterialProperties material_;
    FieldAxis axis_;
};

class Emi final : public NoiseMechanism {
public:
    explicit Emi(ExternalNoiseFactor fa) : fa_(fa) {}
    std::string kind() const override { return "emi"; }
    double spectrum(const EvalPoint& p) const override { return emi_spectrum(p.omega, fa_); }

private:
    ExternalNoiseFactor fa_;
};

class Pickup final : public NoiseMechanism {
public:
    Pickup(ExternalNoiseFactor fa, double area, CharacteristicLengthSource dc)
        : fa_(fa), area_(area), dc_(std::move(dc)) {}
    std::string kind() const override { return "pickup"; }
    double spectrum(const EvalPoint& p) const override {
        const double dc = dc_.at(p.d);
        return pickup_voltage_spectrum(p.omega, fa_, area_) / (dc * dc);
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        return characteristic_length(dc_.geometry.at_distance(p.d)).warnings;
    }

private:
    ExternalNoiseFactor fa_;
    double area_;
    CharacteristicLengthSource dc_;
};

class Johnson final : public NoiseMechanism {
public:
    Johnson(JohnsonParameters params, CharacteristicLengthSource dc) : params_(std::move(params)), dc_(std::move(dc)) {}
    std::string kind() const override { return "johnson"; }
    double spectrum(const EvalPoint& p) const override {
        double r = params_.resistance *
                   std::pow(p.temperature / params_.reference_temperature, params_.temperature_exponent);
        for (const auto& c : params_.components) r += component_esr(c, p.omega).esr;
        return johnson_field_spectrum(r, p.temperature, dc_.at(p.d));
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        auto w = characteristic_length(dc_.geometry.at_distance(p.d)).warnings;
        for (const auto& c : params_.components)
            if (component_esr(c, p.omega).lossless) w.push_back("johnson: lossless component contributes no noise");
        return w;
    }

private:
    JohnsonParameters params_;
    CharacteristicLengthSource dc_;
};

class Technical final : public NoiseMechanism {
public:
    Technical(double s_v, double att, CharacteristicLengthSource dc) : s_v_(s_v), att_(att), dc_(std::move(dc)) {}
    std::string kind() const override { return "technical"; }
    double spectrum(const EvalPoint& p) const override {
        return technical_noise_spectrum(s_v_, att_, dc_.at(p.d));
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        return characteristic_length(dc_.geometry.at_distance(p.d)).warnings;
    }

private:
    double s_v_, att_;
    CharacteristicLengthSource dc_;
};

class SpaceCharge final : public NoiseMechanism {
public:
    SpaceCharge(double tau_e, double current) : tau_e_(tau_e), current_(current) {}
    std::string kind() const override { return "space_charge"; }
    double spectrum(const EvalPoint& p) const override {
        return space_charge_spectrum(tau_e_, p.d, current_ / constants::elementary_charge, p.omega);
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        if (p.omega * tau_e_ < 1.0) return {};
        return {"space_charge: omega not below 1/tau_e"};
    }

private:
    double tau_e_, current_;
};

class Patch final : public NoiseMechanism {
public:
    Patch(PatchModel m, PatchMethod method, FieldAxis a) : model_(m), method_(method), axis_(a) {}
    std::string kind() const override { return "patch"; }
    double spectrum(const EvalPoint& p) const override {
        switch (method_) {
            case PatchMethod::small: return patch_spectrum_small(model_, p.d, axis_);
            case PatchMethod::two_plates: return patch_spectrum_two_plates(model_, p.d, axis_);
            case PatchMethod::planar: return patch_spectrum_planar(model_, p.d, axis_);
        }
        return 0.0;
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        if (method_ != PatchMethod::small || small_patch_valid(model_, p.d)) return {};
        return {"patch: small-patch limit needs r_c << d"};
    }

private:
    PatchModel model_;
    PatchMethod method_;
    FieldAxis axis_;
};

class Tlf final : public NoiseMechanism {
public:
    Tlf(TLFEnsemble e, FieldAxis a) : ens_(std::move(e)), axis_(a) {}
    std::string kind() const override { return "tlf"; }
    double spectrum(const EvalPoint& p) const override {
        return tlf_field_spectrum(ens_, p.omega, p.temperature, p.d, axis_);
    }
    std::vector<std::string> warnings(const EvalPoint& p) const override {
        if (ens_.process != TLFEnsemble::Process::thermal) return {};
        const auto win = tlf_validity_window(ens_, p.temperature);
        if (win.contains(p.omega * ens_.tau0)) return {};
        std::ostringstream msg;
        msg << "tlf: omega tau0 = " << p.omega * ens_.tau0 << " outside the barrier window";
        return {msg.str()};
    }

private:
    TLFEnsemble ens_;
    FieldAxis axis_;
};

class Adatom final : public NoiseMechanism {
public:
    Adatom(AdatomModel m, int levels, FieldAxis a) : model_(std::move(m)), levels_(levels), axis_(a) {}
    std::string kind() const override { return "adatom"; }
    double spectrum(const EvalPoint& p) const override {
        return dipole_layer_field_spectrum(model_.sigma_d, p.d, solver().dipole_spectrum(p.omega, p.temperature),
                                           axis_);
    }

private:
    const AdatomSolver& solver() const {
        std::call_once(once_, [this] { solver_ = std::make_unique<AdatomSolver>(model_, levels_); });
        return *solver_;
    }
    AdatomModel model_;
    int levels_;
    FieldAxis axis_;
    mutable std::once_flag once_;
    mutable std::unique_ptr<AdatomSolver> solver_;
};

class Diffusion final : public NoiseMechanism {
public:
    Diffusion(DiffusionModel m, FieldAxis a) : model_(m), axis_(a) {}
    std::string kind() const override { return "diffusion"; }
    double spectrum(const EvalPoint& p) const override {
        return diffusion_spectrum(model_, p.omega, p.temperature, p.d, axis_);
    }

private:
    DiffusionModel model_;
    FieldAxis axis_;
};

template <class T, class... Args>
MechanismPtr make(Args&&... args) {
    auto m = std::make_shared<T>(std::forward<Args>(args)...);
    m->label = m->kind();
    return m;
}

class Relabelled final : public NoiseMechanism {
public:
    explicit Relabelled(MechanismPtr inner) : inner_(std::move(inner)) {}
    std::string kind() const override { return inner_->kind(); }
    double spectrum(const EvalPoint& p) const override { return inner_->spectrum(p); }
    std::vector<std::string> warnings(const EvalPoint& p) const override { return inner_->warnings(p); }

private:
    MechanismPtr inner_;
};

}  // namespace

MechanismPtr make_blackbody() { return make<Blackbody>(); }
MechanismPtr make_surface_blackbody(MaterialProperties material, FieldAxis axis) {
    return make<SurfaceBlackbody>(std::move(material), axis);
}
MechanismPtr make_emi(ExternalNoiseFactor fa) { return make<Emi>(fa); }
MechanismPtr make_pickup(ExternalNoiseFactor fa, double loop_area, CharacteristicLengthSource d_char) {
    if (!(loop_area > 0.0)) throw DomainError("pickup: loop area must be positive");
    return make<Pickup>(fa, loop_area, std::move(d_char));
}
MechanismPtr make_johnson(JohnsonParameters params, CharacteristicLengthSource d_char) {
    if (!(params.resistance >= 0.0)) throw DomainError("johnson: resistance must be >= 0");
    if (!(params.reference_temperature > 0.0)) throw DomainError("johnson: reference temperature must be positive");
    return make<Johnson>(std::move(params), std::move(d_char));
}
MechanismPtr make_technical(double s_v_source, double attenuation_db, CharacteristicLengthSource d_char) {
    if (!(s_v_source >= 0.0)) throw DomainError("technical: voltage noise must be >= 0");
    return make<Technical>(s_v_source, attenuation_db, std::move(d_char));
}
MechanismPtr make_space_charge(double tau_e, double current) {
    if (!(tau_e > 0.0)) throw DomainError("space_charge: tau_e must be positive");
    if (!(current >= 0.0)) throw DomainError("space_charge: current must be >= 0");
    return make<SpaceCharge>(tau_e, current);
}
MechanismPtr make_patch(PatchModel model, PatchMethod method, FieldAxis axis) {
    model.validate();
    return make<Patch>(model, method, axis);
}
MechanismPtr make_tlf(TLFEnsemble ensemble, FieldAxis axis) {
    ensemble.validate();
    return make<Tlf>(std::move(ensemble), axis);
}
MechanismPtr make_adatom(AdatomModel model, int levels, FieldAxis axis) {
    model.validate();
    if (levels != all_bound_levels && levels < 2) throw DomainError("adatom: at least two levels required");
    return make<Adatom>(std::move(model), levels, axis);
}
MechanismPtr make_diffusion(DiffusionModel model, FieldAxis axis) {
    model.validate();
    return make<Diffusion>(model, axis);
}

MechanismPtr with_label(MechanismPtr m, std::string label, std::optional<double> distance) {
    auto r = std::make_shared<Relabelled>(std::move(m));
    r->label = std::move(label);
    r->distance = distance;
    return r;
}

}  // namespace ionnoise
