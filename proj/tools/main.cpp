#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionnoise/budget.hpp"
#include "ionnoise/config.hpp"
#include "ionnoise/dataset.hpp"
#include "ionnoise/errors.hpp"
#include "ionnoise/thermometry.hpp"

using namespace ionnoise;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_evaluation = 2;

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string fixed(double x, int digits = 3) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print_text(std::ostream& out) const {
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        const auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t i = 0; i < r.size(); ++i) {
                s += r[i];
                if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
            }
            out << s << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
    }

    void print_csv(std::ostream& out) const {
        const auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
            out << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
    }
};

struct Options {
    std::string config;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "table";
};

// CSV always goes to --out; stdout follows --format
void emit(const Options& opt, const Table& table, const std::vector<std::string>& notes = {}) {
    if (opt.format == "csv") {
        table.print_csv(std::cout);
    } else {
        table.print_text(std::cout);
        for (const auto& n : notes) std::cout << n << '\n';
    }
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw InputError("cannot write " + opt.out);
        table.print_csv(f);
    }
}

TrapConfiguration require_config(const Options& opt) {
    if (opt.config.empty()) throw ValidationError({"--config is required"});
    return load_config(opt.config);
}

int run_validate(const Options& opt) {
    const auto cfg = require_config(opt);
    std::cout << "valid: " << opt.config << " (" << cfg.mechanisms.size() << " mechanism rows)\n";
    for (const auto& w : cfg.warnings) std::cout << "warning: " << w << '\n';
    return exit_ok;
}

int run_budget(const Options& opt) {
    const auto cfg = require_config(opt);
    const auto report = noise_budget(cfg);
    Table t;
    t.header = {"label", "kind", "d_m", "omega_rad_s", "T_K", "S_E", "gamma_h_s", "alpha", "beta", "gamma", "status"};
    bool failed = false;
    std::vector<std::string> notes;
    for (const auto& w : report.warnings) notes.push_back("warning: " + w);
    for (const auto& r : report.rows) {
        std::string status = r.ok() ? (r.warnings.empty() ? "ok" : "warning") : "error";
        t.rows.push_back({r.label, r.kind, num(r.point.d), num(r.point.omega), fixed(r.point.temperature, 2),
                          num(r.s_e), num(r.gamma_h), fixed(r.alpha), fixed(r.beta), fixed(r.gamma), status});
        if (!r.ok()) {
            failed = true;
            notes.push_back("error: " + r.label + ": " + r.error);
        }
        for (const auto& w : r.warnings) notes.push_back("warning: " + r.label + ": " + w);
    }
    t.rows.push_back({"total", "sum", "", "", "", num(report.total_s_e), num(report.total_gamma_h), "", "", "",
                      failed ? "partial" : "ok"});
    emit(opt, t, notes);
    return failed ? exit_evaluation : exit_ok;
}

int run_scan(const Options& opt, const ScanRequest& req, const std::string& samples_out) {
    const auto cfg = require_config(opt);
    const auto res = scan_and_fit(cfg, req);
    const std::string var = to_string(req.variable);
    const std::string exponent_name =
        req.variable == ScanVariable::omega ? "alpha" : req.variable == ScanVariable::d ? "beta" : "gamma";
    Table t;
    t.header = {"label", "kind", exponent_name, "uncertainty", "rms_residual", "power_law", "errors"};
    bool failed = false;
    for (const auto& s : res.series) {
        if (!s.errors.empty()) failed = true;
        t.rows.push_back({s.label, s.kind, s.fitted ? fixed(s.exponent, 4) : "nan",
                          s.fitted ? fixed(s.fit.uncertainty, 4) : "nan", s.fitted ? num(s.fit.rms_residual) : "nan",
                          !s.fitted ? "no" : s.non_power_law ? "no" : "yes", std::to_string(s.errors.size())});
    }
    emit(opt, t);
    // tidy sample data: one row per sample per series
    if (!samples_out.empty()) {
        std::ofstream f(samples_out);
        if (!f) throw InputError("cannot write " + samples_out);
        Table d;
        d.header = {"variable", "x", "label", "kind", "S_E"};
        for (const auto& s : res.series)
            for (std::size_t i = 0; i < res.x.size(); ++i) d.rows.push_back({var, num(res.x[i]), s.label, s.kind, num(s.s_e[i])});
        d.print_csv(f);
    }
    return failed ? exit_evaluation : exit_ok;
}

int run_thermometry(const Options& opt, int runs) {
    const auto cfg = require_config(opt);
    if (!cfg.thermometry) throw ValidationError({"config: thermometry block required"});
    Table t;
    t.header = {"run", "seed", "rate_s", "uncertainty_s", "intercept", "valid", "points_used"};
    for (int i = 0; i < runs; ++i) {
        auto tc = *cfg.thermometry;
        tc.seed = opt.seed + static_cast<std::uint64_t>(i);
        const auto est = simulate_heating_measurement(tc);
        int used = 0;
        for (const auto& p : est.points) used += p.used ? 1 : 0;
        t.rows.push_back({std::to_string(i), std::to_string(tc.seed), num(est.rate), num(est.uncertainty),
                          num(est.intercept), est.valid ? "yes" : "no", std::to_string(used)});
    }
    emit(opt, t);
    return exit_ok;
}

int run_compare(const Options& opt, const std::string& dataset) {
    const auto cfg = require_config(opt);
    const auto records = load_dataset(dataset);
    const auto rows = dataset_compare(records, cfg);
    Table t;
    t.header = {"label", "d_m", "omega_rad_s", "T_K", "S_E", "predicted", "ratio", "status"};
    bool failed = false;
    std::vector<std::string> notes;
    for (const auto& r : rows) {
        t.rows.push_back({r.record.label, num(r.record.d), num(r.record.omega), fixed(r.record.temperature, 2),
                          num(r.record.s_e), num(r.predicted), num(r.ratio), r.status});
        if (!r.error.empty()) {
            failed = true;
            notes.push_back("error: " + r.record.label + ": " + r.error);
        }
    }
    emit(opt, t, notes);
    return failed ? exit_evaluation : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electric-field noise budgets and heating-rate tools for trapped ions"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config, "trap configuration (JSON)");
    app.add_option("--seed", opt.seed, "random seed");
    app.add_option("--out", opt.out, "write machine-readable CSV to this file");
    app.add_option("--format", opt.format, "standard output format")->check(CLI::IsMember({"table", "csv"}));

    auto* validate = app.add_subcommand("validate", "check a configuration")->fallthrough();
    auto* budget = app.add_subcommand("budget", "mechanism-by-mechanism noise budget")->fallthrough();

    auto* scan = app.add_subcommand("scan", "log-spaced scan with power-law fits")->fallthrough();
    std::string var = "omega", samples_out;
    ScanRequest req;
    scan->add_option("--var", var, "omega (rad/s), d (m) or T (K)")->check(CLI::IsMember({"omega", "d", "T"}));
    scan->add_option("--min", req.lo, "lower end of the range")->required();
    scan->add_option("--max", req.hi, "upper end of the range")->required();
    scan->add_option("--points", req.points, "number of samples");
    scan->add_option("--threshold", req.residual_threshold, "rms log residual for the non-power-law flag");
    scan->add_option("--samples", samples_out, "write tidy sample data (CSV)");

    auto* thermo = app.add_subcommand("thermometry", "synthetic sideband heating-rate measurement")->fallthrough();
    int runs = 1;
    thermo->add_option("--runs", runs, "number of seeded runs (seed, seed+1, ...)")->check(CLI::PositiveNumber);

    auto* compare = app.add_subcommand("compare", "compare measurements with the configured budget")->fallthrough();
    std::string dataset;
    compare->add_option("--dataset", dataset, "measurement CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (*validate) return run_validate(opt);
        if (*budget) return run_budget(opt);
        if (*scan) {
            req.variable = parse_scan_variable(var);
            return run_scan(opt, req, samples_out);
        }
        if (*thermo) return run_thermometry(opt, runs);
        if (*compare) return run_compare(opt, dataset);
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations) std::cerr << "invalid: " << v << '\n';
        return exit_validation;
    } catch (const InputError& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_evaluation;
    }
    return exit_validation;
}
