#include "ionnoise/config.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ionnoise/constants.hpp"
#include "ionnoise/errors.hpp"

namespace ionnoise {

using nlohmann::json;

IonSpecies species_preset(const std::string& label) {
    if (label == "9Be+") return beryllium9();
    if (label == "25Mg+") return magnesium25();
    if (label == "40Ca+") return calcium40();
    if (label == "88Sr+") return strontium88();
    if (label == "171Yb+") return ytterbium171();
    throw InputError("unknown species '" + label + "'");
}

namespace {

enum class Check { any, positive, non_negative };

// Reads one JSON object, checks types and ranges, and remembers which keys were consumed.
class Section {
public:
    Section(const json& j, std::string path, std::vector<std::string>& errors)
        : j_(j), path_(std::move(path)), errors_(errors) {
        if (!j_.is_object()) fail("", "expected an object");
    }

    bool ok() const { return j_.is_object(); }
    bool has(const std::string& key) const { return ok() && j_.contains(key); }
    const std::string& path() const { return path_; }

    std::optional<double> number(const std::string& key, Check check = Check::any) {
        if (!take(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_number()) {
            fail(key, "expected a number");
            return std::nullopt;
        }
        const double x = v.get<double>();
        if (check == Check::positive && !(x > 0.0)) fail(key, "must be positive");
        if (check == Check::non_negative && !(x >= 0.0)) fail(key, "must be >= 0");
        return x;
    }

    double number(const std::string& key, double fallback, Check check = Check::any) {
        return number(key, check).value_or(fallback);
    }

    double required(const std::string& key, Check check = Check::any) {
        if (!has(key)) {
            fail(key, "required");
            return 0.0;
        }
        return number(key, check).value_or(0.0);
    }

    std::optional<std::string> text(const std::string& key) {
        if (!take(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_string()) {
            fail(key, "expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    std::optional<bool> boolean(const std::string& key) {
        if (!take(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_boolean()) {
            fail(key, "expected true or false");
            return std::nullopt;
        }
        return v.get<bool>();
    }

    std::optional<int> integer(const std::string& key, int min_value) {
        if (!take(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) {
            fail(key, "expected an integer");
            return std::nullopt;
        }
        const auto x = v.get<long long>();
        if (x < min_value) {
            fail(key, "must be >= " + std::to_string(min_value));
            return std::nullopt;
        }
        return static_cast<int>(x);
    }

    std::vector<double> numbers(const std::string& key) {
        std::vector<double> out;
        if (!take(key)) return out;
        const auto& v = j_.at(key);
        if (!v.is_array()) {
            fail(key, "expected an array of numbers");
            return out;
        }
        for (const auto& x : v) {
            if (!x.is_number()) {
                fail(key, "expected an array of numbers");
                return {};
            }
            out.push_back(x.get<double>());
        }
        return out;
    }

    const json* child(const std::string& key) {
        if (!take(key)) return nullptr;
        return &j_.at(key);
    }

    // choice among tags; returns the fallback when absent
    template <class E>
    E choice(const std::string& key, E fallback, const std::function<E(const std::string&)>& parse) {
        const auto t = text(key);
        if (!t) return fallback;
        try {
            return parse(*t);
        } catch (const Error& e) {
            fail(key, e.what());
            return fallback;
        }
    }

    FieldAxis axis() {
        return choice<FieldAxis>("axis", FieldAxis::perpendicular, [](const std::string& s) {
            if (s == "perp") return FieldAxis::perpendicular;
            if (s == "par") return FieldAxis::parallel;
            throw InputError("expected 'perp' or 'par'");
        });
    }

    void fail(const std::string& key, const std::string& message) {
        errors_.push_back(path_ + (key.empty() ? "" : "." + key) + ": " + message);
    }

    // report every key that was never consumed
    void finish() {
        if (!ok()) return;
        for (const auto& [key, value] : j_.items()) {
            (void)value;
            if (!seen_.count(key)) fail(key, "unknown key");
        }
    }

private:
    bool take(const std::string& key) {
        seen_.insert(key);
        return ok() && j_.contains(key);
    }

    const json& j_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

IonSpecies read_species(const json& j, std::vector<std::string>& errors) {
    if (j.is_string()) {
        try {
            return species_preset(j.get<std::string>());
        } catch (const Error& e) {
            errors.push_back(std::string("species: ") + e.what());
            return {};
        }
    }
    Section s(j, "species", errors);
    const std::string label = s.text("label").value_or("ion");
    const double mass = s.required("mass_amu", Check::positive);
    const int charge = s.integer("charge", 1).value_or(1);
    s.finish();
    return IonSpecies::from_amu(label, mass, charge);
}

DriveParameters read_drive(const json& j, std::vector<std::string>& errors) {
    Section s(j, "drive", errors);
    DriveParameters d;
    d.omega_rf = hz_to_rad(s.required("rf_frequency_hz", Check::positive));
    d.a = s.number("a", 0.0);
    d.q = s.required("q");
    StabilityGuard guard;
    guard.max_abs_q = s.number("max_abs_q", guard.max_abs_q, Check::positive);
    guard.max_abs_a = s.number("max_abs_a", guard.max_abs_a, Check::positive);
    s.finish();
    try {
        check_guard(d, guard);
        secular_frequency(d);
    } catch (const Error& e) {
        errors.push_back(std::string("drive: ") + e.what());
    }
    return d;
}

GeometryModel read_geometry(const json& j, std::vector<std::string>& errors, std::vector<std::string>& warnings) {
    Section s(j, "geometry", errors);
    const std::string kind = s.text("kind").value_or("");
    GeometryModel g;
    if (kind == "plates") {
        g = GeometryModel::plates(s.required("separation_m", Check::positive));
    } else if (kind == "spheres") {
        const double r = s.required("r_el_m", Check::positive);
        g = GeometryModel::spheres(r, s.required("separation_m", Check::positive));
    } else if (kind == "needles") {
        const double r = s.required("r_el_m", Check::positive);
        g = GeometryModel::needles(r, s.required("d_m", Check::positive));
    } else {
        s.fail("kind", "expected 'plates', 'spheres' or 'needles'");
    }
    s.finish();
    if (g.separation > 0.0 && (g.kind == GeometryModel::Kind::plates || g.r_el > 0.0)) {
        for (auto& w : characteristic_length(g).warnings) warnings.push_back("geometry: " + w);
    }
    return g;
}

ExternalNoiseFactor read_fa(Section& s) {
    if (s.has("environment")) {
        if (s.has("fa_db")) s.fail("fa_db", "give either environment or fa_db");
        auto env = s.choice<Environment>("environment", Environment::indoor, parse_environment);
        return ExternalNoiseFactor::for_environment(env);
    }
    ExternalNoiseFactor fa;
    fa.db = s.required("fa_db");
    fa.exponent = s.number("fa_exponent", 0.0);
    fa.omega_ref = hz_to_rad(s.number("fa_reference_hz", 1e6, Check::positive));
    return fa;
}

CharacteristicLengthSource read_d_char(Section& s, const GeometryModel& g, double row_d) {
    CharacteristicLengthSource src;
    src.geometry = g;
    src.d_char = s.number("D_m", Check::positive);
    src.anchor_d = row_d;
    return src;
}

double debye(double x) { return debye_to_cm(x); }
double ev(double x) { return ev_to_joule(x); }

BarrierDistribution read_barriers(const json& j, const std::string& path, std::vector<std::string>& errors) {
    Section s(j, path, errors);
    const std::string kind = s.text("kind").value_or("uniform");
    BarrierDistribution b;
    if (kind == "uniform") {
        b = BarrierDistribution::uniform(ev(s.required("v_min_ev", Check::non_negative)),
                                         ev(s.required("v_max_ev", Check::positive)));
    } else if (kind == "power") {
        const double lo = ev(s.required("v_min_ev", Check::non_negative));
        const double hi = ev(s.required("v_max_ev", Check::positive));
        b = BarrierDistribution::power(lo, hi, s.required("gamma"));
    } else if (kind == "lorentzian") {
        const double v0 = ev(s.required("v0_ev", Check::positive));
        const double width = ev(s.required("width_ev", Check::positive));
        const double lo = ev(s.number("v_min_ev", 0.0, Check::non_negative));
        const auto hi = s.number("v_max_ev", Check::positive);
        b = BarrierDistribution::lorentzian(v0, width, lo,
                                            hi ? ev(*hi) : std::numeric_limits<double>::infinity());
    } else {
        s.fail("kind", "expected 'uniform', 'power' or 'lorentzian'");
    }
    s.finish();
    return b;
}

TunnelingParameters read_tunneling(const json& j, const std::string& path, std::vector<std::string>& errors) {
    Section s(j, path, errors);
    TunnelingParameters t;
    t.delta_max = ev(s.required("delta_max_ev", Check::positive));
    t.lambda_min = s.required("lambda_min", Check::non_negative);
    t.lambda_max = s.required("lambda_max", Check::positive);
    t.t1_span = s.number("t1_span", t.t1_span, Check::positive);
    t.xi_l = ev(s.required("xi_l_ev", Check::non_negative));
    t.xi_t = ev(s.required("xi_t_ev", Check::non_negative));
    t.v_l = s.required("v_l_m_s", Check::positive);
    t.v_t = s.required("v_t_m_s", Check::positive);
    t.density = s.required("density_kg_m3", Check::positive);
    s.finish();
    return t;
}

using Builder = std::function<MechanismPtr(Section&, double row_d)>;

struct Context {
    const GeometryModel& geometry;
    std::vector<std::string>& errors;
};

// table order of the budget rows
const std::vector<std::string> mechanism_order = {"blackbody", "surface_blackbody", "emi", "pickup",
                                                  "johnson", "technical", "space_charge", "patch",
                                                  "tlf", "adatom", "diffusion"};

std::map<std::string, Builder> builders(Context& ctx) {
    std::map<std::string, Builder> b;
    b["blackbody"] = [](Section&, double) { return make_blackbody(); };
    b["surface_blackbody"] = [](Section& s, double) {
        MaterialProperties m = gold();
        if (auto label = s.text("material")) m.label = *label;
        m.resistivity = s.number("resistivity_ohm_m", m.resistivity, Check::positive);
        return make_surface_blackbody(m, s.axis());
    };
    b["emi"] = [](Section& s, double) { return make_emi(read_fa(s)); };
    b["pickup"] = [&ctx](Section& s, double row_d) {
        const auto fa = read_fa(s);
        const double area = s.required("loop_area_m2", Check::positive);
        return make_pickup(fa, area, read_d_char(s, ctx.geometry, row_d));
    };
    b["johnson"] = [&ctx](Section& s, double row_d) {
        JohnsonParameters p;
        p.resistance = s.number("resistance_ohm", 0.0, Check::non_negative);
        p.reference_temperature = s.number("reference_temperature_k", 300.0, Check::positive);
        p.temperature_exponent = s.number("temperature_exponent", 1.0);
        if (const json* list = s.child("components")) {
            if (!list->is_array()) s.fail("components", "expected an array");
            else
                for (std::size_t i = 0; i < list->size(); ++i) {
                    Section c((*list)[i], s.path() + ".components[" + std::to_string(i) + "]", ctx.errors);
                    const std::string kind = c.text("kind").value_or("");
                    const double value = c.required("value", Check::positive);
                    if (kind == "resistor") p.components.push_back(CircuitElement::resistor(value));
                    else if (kind == "capacitor")
                        p.components.push_back(
                            CircuitElement::capacitor(value, c.number("loss_tangent", 0.0, Check::non_negative)));
                    else if (kind == "inductor")
                        p.components.push_back(CircuitElement::inductor(value, c.required("quality", Check::positive)));
                    else c.fail("kind", "expected 'resistor', 'capacitor' or 'inductor'");
                    c.finish();
                }
        }
        return make_johnson(p, read_d_char(s, ctx.geometry, row_d));
    };
    b["technical"] = [&ctx](Section& s, double row_d) {
        const double sv = s.required("voltage_noise_v2_hz", Check::non_negative);
        const double att = s.number("attenuation_db", 0.0);
        return make_technical(sv, att, read_d_char(s, ctx.geometry, row_d));
    };
    b["space_charge"] = [](Section& s, double) {
        const double tau = s.number("tau_e_s", 100e-12, Check::positive);
        return make_space_charge(tau, s.required("current_a", Check::non_negative));
    };
    b["patch"] = [](Section& s, double) {
        PatchModel m;
        const auto method = s.choice<PatchMethod>("method", PatchMethod::small, parse_patch_method);
        m.s_v = s.required("s_v_v2_hz", Check::non_negative);
        m.area = s.number("area_m2", 0.0, Check::non_negative);
        m.coverage = s.number("coverage", 1.0, Check::non_negative);
        m.correlation = s.choice<PatchCorrelation>("correlation", PatchCorrelation::exponential,
                                                   [](const std::string& t) {
                                                       if (t == "exponential") return PatchCorrelation::exponential;
                                                       if (t == "step") return PatchCorrelation::step;
                                                       throw InputError("expected 'exponential' or 'step'");
                                                   });
        m.r_c = s.required("r_c_m", Check::positive);
        if (method == PatchMethod::small && !(m.area > 0.0)) m.area = effective_patch_area(m.correlation, m.r_c);
        return make_patch(m, method, s.axis());
    };
    b["tlf"] = [&ctx](Section& s, double) {
        TLFEnsemble e;
        e.process = s.choice<TLFEnsemble::Process>("process", TLFEnsemble::Process::thermal,
                                                   [](const std::string& t) {
                                                       if (t == "thermal") return TLFEnsemble::Process::thermal;
                                                       if (t == "tunneling") return TLFEnsemble::Process::tunneling;
                                                       throw InputError("expected 'thermal' or 'tunneling'");
                                                   });
        e.mu = debye(s.required("dipole_debye", Check::positive));
        e.sigma_d = s.required("sigma_d_m2", Check::non_negative);
        e.tau0 = s.number("tau0_s", e.tau0, Check::positive);
        e.e_max = ev(s.number("e_max_ev", 0.0, Check::non_negative));
        const json* barriers = s.child("barriers");
        const json* tunneling = s.child("tunneling");
        if (e.process == TLFEnsemble::Process::thermal) {
            if (!barriers) s.fail("barriers", "required for the thermal process");
            else e.barriers = read_barriers(*barriers, s.path() + ".barriers", ctx.errors);
            if (tunneling) s.fail("tunneling", "only valid for the tunneling process");
        } else {
            if (!tunneling) s.fail("tunneling", "required for the tunneling process");
            else e.tunneling = read_tunneling(*tunneling, s.path() + ".tunneling", ctx.errors);
            if (barriers) s.fail("barriers", "only valid for the thermal process");
        }
        return make_tlf(e, s.axis());
    };
    b["adatom"] = [](Section& s, double) {
        AdatomModel m;
        m.u0 = ev(s.required("u0_ev", Check::positive));
        m.z0 = s.number("z0_m", m.z0, Check::positive);
        m.w = s.number("w", m.w, Check::positive);
        m.mass = s.required("mass_amu", Check::positive) * constants::atomic_mass_unit;
        m.mu0 = debye(s.required("dipole_debye", Check::positive));
        m.sigma_d = s.required("sigma_d_m2", Check::non_negative);
        m.density = s.required("density_kg_m3", Check::positive);
        m.sound_velocity = s.required("sound_velocity_m_s", Check::positive);
        m.lattice_constant = s.number("lattice_constant_m", m.lattice_constant, Check::positive);
        m.debye_cutoff = s.boolean("debye_cutoff").value_or(m.debye_cutoff);
        if (auto g0 = s.number("gamma0_hz", Check::positive)) m.gamma0_override = hz_to_rad(*g0);
        m.grid_points = s.integer("grid_points", 100).value_or(m.grid_points);
        const int levels = s.integer("levels", 2).value_or(all_bound_levels);
        return make_adatom(m, levels, s.axis());
    };
    b["diffusion"] = [](Section& s, double) {
        DiffusionModel m;
        m.geometry = s.choice<DiffusionGeometry>("geometry", DiffusionGeometry::planar, [](const std::string& t) {
            if (t == "planar") return DiffusionGeometry::planar;
            if (t == "needle") return DiffusionGeometry::needle;
            if (t == "patches") return DiffusionGeometry::patches;
            throw InputError("expected 'planar', 'needle' or 'patches'");
        });
        m.kernel = s.choice<DiffusionKernel>("kernel", DiffusionKernel::analytic, [](const std::string& t) {
            if (t == "analytic") return DiffusionKernel::analytic;
            if (t == "numeric") return DiffusionKernel::numeric;
            throw InputError("expected 'analytic' or 'numeric'");
        });
        m.d0 = s.number("d0_m2_s", m.d0, Check::non_negative);
        m.v_b = ev(s.number("v_b_ev", 0.0, Check::non_negative));
        m.d_t = s.number("d_t_m2_s", 0.0, Check::non_negative);
        m.mu = debye(s.required("dipole_debye", Check::positive));
        m.sigma_d = s.required("sigma_d_m2", Check::non_negative);
        m.radius = s.number("radius_m", 0.0, Check::non_negative);
        return make_diffusion(m, s.axis());
    };
    return b;
}

HeatingMeasurementConfig read_thermometry(const json& j, std::vector<std::string>& errors) {
    Section s(j, "thermometry", errors);
    HeatingMeasurementConfig c;
    c.gamma_h = s.required("gamma_h_s", Check::non_negative);
    c.nbar_bath = s.number("nbar_bath", c.nbar_bath, Check::positive);
    c.nbar0 = s.number("nbar0", c.nbar0, Check::non_negative);
    c.wait_times = s.numbers("wait_times_s");
    if (c.wait_times.empty()) s.fail("wait_times_s", "at least one wait time required");
    for (double t : c.wait_times)
        if (!(t >= 0.0)) s.fail("wait_times_s", "wait times must be >= 0");
    c.shots = s.integer("shots", 1).value_or(c.shots);
    c.eta = s.number("eta", c.eta, Check::positive);
    c.omega_l = hz_to_rad(s.number("rabi_frequency_hz", 1e5, Check::positive));
    c.order = s.integer("order", 1).value_or(c.order);
    c.nbar_validity_limit = s.number("nbar_validity_limit", c.nbar_validity_limit, Check::positive);
    s.finish();
    return c;
}

}  // namespace

TrapConfiguration parse_config(const std::string& text, const std::string& source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError({source + ": " + e.what()});
    }
    std::vector<std::string> errors;
    TrapConfiguration cfg;
    Section top(root, "config", errors);
    if (!top.ok()) throw ValidationError(errors);

    if (const json* sp = top.child("species")) cfg.species = read_species(*sp, errors);
    else top.fail("species", "required");
    if (const json* dr = top.child("drive")) cfg.drive = read_drive(*dr, errors);
    else top.fail("drive", "required");
    if (const json* ge = top.child("geometry")) cfg.geometry = read_geometry(*ge, errors, cfg.warnings);
    else top.fail("geometry", "required");
    cfg.temperature = top.number("temperature_k", 300.0, Check::positive);
    if (const json* ev_ = top.child("evaluation")) {
        Section e(*ev_, "evaluation", errors);
        cfg.omega = hz_to_rad(e.number("frequency_hz", 1e6, Check::positive));
        e.finish();
    }
    if (const json* th = top.child("thermometry")) cfg.thermometry = read_thermometry(*th, errors);

    Context ctx{cfg.geometry, errors};
    const auto table = builders(ctx);
    for (const auto& name : mechanism_order) {
        const auto& build = table.at(name);
        const json* block = top.child(name);
        if (!block) continue;
        std::vector<const json*> items;
        if (block->is_array()) {
            for (const auto& x : *block) items.push_back(&x);
            if (items.empty()) top.fail(name, "empty array");
        } else {
            items.push_back(block);
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::string path = block->is_array() ? name + "[" + std::to_string(i) + "]" : name;
            Section s(*items[i], path, errors);
            if (!s.ok()) continue;
            const std::size_t before = errors.size();
            auto row_label = s.text("label");
            auto row_d = s.number("d_m", Check::positive);
            const double d_here = row_d.value_or(cfg.geometry.d());
            MechanismPtr m;
            try {
                m = build(s, d_here);
            } catch (const Error& e) {
                // a missing or malformed field has already been reported
                if (errors.size() == before) s.fail("", e.what());
            }
            s.finish();
            if (!m || errors.size() != before) continue;
            std::string label = row_label.value_or(items.size() > 1 ? name + "#" + std::to_string(i + 1) : name);
            cfg.mechanisms.push_back(with_label(m, label, row_d));
        }
    }
    top.finish();
    if (!errors.empty()) throw ValidationError(errors);
    return cfg;
}

TrapConfiguration load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError({path + ": cannot open file"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace ionnoise
