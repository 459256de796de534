#include "ionnoise/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ionnoise/errors.hpp"

namespace ionnoise {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

bool parse_double(const std::string& s, double& x) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, x);
    return ec == std::errc() && ptr == end;
}

std::string format_double(double x) {
    std::ostringstream o;
    o << std::setprecision(17) << x;
    return o.str();
}

std::string flags_text(const MeasurementFlags& f) {
    std::string s;
    const auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ';';
        s += name;
    };
    add(f.upper_limit, "upper_limit");
    add(f.post_cleaning, "post_cleaning");
    add(f.cryogenic, "cryogenic");
    return s;
}

}  // namespace

std::vector<MeasurementRecord> read_dataset(std::istream& in, const std::string& source) {
    std::vector<MeasurementRecord> records;
    std::vector<std::string> errors;
    std::string line;
    if (!std::getline(in, line)) throw ValidationError({source + ": empty file, expected header"});
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != dataset_header)
        throw ValidationError({source + ":1: header must be '" + std::string(dataset_header) +
                               "' (SI units only)"});
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        const auto f = split_csv(line);
        if (f.size() != 7) {
            errors.push_back(where + "expected 7 fields, found " + std::to_string(f.size()));
            continue;
        }
        MeasurementRecord r;
        r.label = f[0];
        r.species = f[5];
        const std::size_t before = errors.size();
        const auto num = [&](const std::string& text, const char* column, double& x, bool positive) {
            if (!parse_double(text, x)) errors.push_back(where + column + ": not a number '" + text + "'");
            else if (positive && !(x > 0.0)) errors.push_back(where + column + ": must be positive");
        };
        num(f[1], "d_m", r.d, true);
        num(f[2], "omega_rad_s", r.omega, true);
        num(f[3], "T_K", r.temperature, true);
        num(f[4], "S_E", r.s_e, false);
        std::istringstream flags(f[6]);
        std::string tok;
        while (std::getline(flags, tok, ';')) {
            if (tok.empty()) continue;
            if (tok == "upper_limit") r.flags.upper_limit = true;
            else if (tok == "post_cleaning") r.flags.post_cleaning = true;
            else if (tok == "cryogenic") r.flags.cryogenic = true;
            else errors.push_back(where + "flags: unknown flag '" + tok + "'");
        }
        if (errors.size() == before) {
            if (!r.flags.upper_limit && !(r.s_e > 0.0)) errors.push_back(where + "S_E must be positive");
            else if (r.s_e < 0.0) errors.push_back(where + "S_E must be >= 0");
        }
        if (errors.size() == before) records.push_back(std::move(r));
    }
    if (!errors.empty()) throw ValidationError(errors);
    return records;
}

std::vector<MeasurementRecord> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError({path + ": cannot open file"});
    return read_dataset(in, path);
}

void write_dataset(std::ostream& out, const std::vector<MeasurementRecord>& records) {
    out << dataset_header << '\n';
    for (const auto& r : records) {
        out << quote_csv(r.label) << ',' << format_double(r.d) << ',' << format_double(r.omega) << ','
            << format_double(r.temperature) << ',' << format_double(r.s_e) << ',' << quote_csv(r.species) << ','
            << flags_text(r.flags) << '\n';
    }
}

std::vector<ComparisonRow> dataset_compare(const std::vector<MeasurementRecord>& records,
                                           const TrapConfiguration& config) {
    std::vector<ComparisonRow> out;
    for (const auto& r : records) {
        ComparisonRow row;
        row.record = r;
        row.status = "ok";
        double total = 0.0;
        for (const auto& m : config.mechanisms) {
            try {
                const double s = m->spectrum({r.omega, r.d, r.temperature});
                if (!(s >= 0.0)) throw DomainError("negative or undefined spectrum");
                total += s;
            } catch (const std::exception& e) {
                row.status = "error";
                row.error = m->label + ": " + e.what();
                break;
            }
        }
        if (row.status != "error") {
            row.predicted = total;
            row.ratio = total > 0.0 ? r.s_e / total : std::numeric_limits<double>::infinity();
            if (r.flags.upper_limit) row.status = total <= r.s_e ? "within_limit" : "exceeds_limit";
        } else {
            row.predicted = row.ratio = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(std::move(row));
    }
    std::stable_sort(out.begin(), out.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        if (a.record.d != b.record.d) return a.record.d < b.record.d;
        return a.record.label < b.record.label;
    });
    return out;
}

}  // namespace ionnoise
