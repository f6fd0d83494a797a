#include "eforce/csvio.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace eforce::csvio {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_force_curve(std::ostream& os, const bichromatic::ForceCurve& curve,
                       const std::string& cmd) {
    curve.validate();
    if (!cmd.empty()) os << "# cmd: " << cmd << "\n";
    os << "# lambda = " << fmt17(curve.atom.lambda_a) << "\n";
    os << "# gamma = " << fmt17(curve.atom.gamma_nl) << "\n";
    os << "# delta = " << fmt17(curve.field.delta) << "\n";
    os << "# rabi = " << fmt17(curve.field.omega_r) << "\n";
    os << "# phase = " << fmt17(curve.field.phase) << "\n";
    os << "# carrier-detuning = " << fmt17(curve.field.carrier_detuning) << "\n";
    os << "# rtol = " << fmt17(curve.meta.rtol) << "\n";
    os << "# atol = " << fmt17(curve.meta.atol) << "\n";
    os << "# transient-periods = " << curve.meta.transient_periods << "\n";
    os << "# averaging-periods = " << curve.meta.averaging_periods << "\n";
    if (curve.meta.symmetry.computed) {
        os << "# symmetry-even-defect = " << fmt17(curve.meta.symmetry.even_defect) << "\n";
        os << "# symmetry-odd-defect = " << fmt17(curve.meta.symmetry.odd_defect) << "\n";
    }
    os << "v,F_mean,F_spread\n";
    for (const bichromatic::CurvePoint& p : curve.points) {
        os << fmt17(p.v) << ',' << fmt17(p.f_mean) << ',' << fmt17(p.f_spread) << "\n";
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("csv: bad numeric value '" + s + "' in " + what);
    }
}

} // namespace

bichromatic::ForceCurve read_force_curve(std::istream& is) {
    bichromatic::ForceCurve curve;
    std::map<std::string, std::string> kv;
    std::string line;
    bool header_seen = false;

    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                const std::string key = trim(line.substr(1, eq - 1));
                kv[key] = trim(line.substr(eq + 1));
            }
            continue;
        }
        if (!header_seen) {
            if (line.rfind("v,", 0) != 0 && line != "v") {
                throw std::invalid_argument("csv: expected header starting with 'v,'");
            }
            header_seen = true;
            continue;
        }
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != 2 && cells.size() != 3) {
            throw std::invalid_argument("csv: expected 2 or 3 columns, got line '" + line + "'");
        }
        bichromatic::CurvePoint p;
        p.v = parse_double(cells[0], "velocity column");
        p.f_mean = parse_double(cells[1], "force column");
        p.f_spread = cells.size() == 3 ? parse_double(cells[2], "spread column") : 0.0;
        curve.points.push_back(p);
    }
    if (!header_seen) throw std::invalid_argument("csv: no header row found");

    auto fetch = [&kv](const char* key, double& slot) {
        const auto it = kv.find(key);
        if (it != kv.end()) slot = parse_double(it->second, key);
    };
    fetch("lambda", curve.atom.lambda_a);
    fetch("gamma", curve.atom.gamma_nl);
    fetch("delta", curve.field.delta);
    fetch("rabi", curve.field.omega_r);
    fetch("phase", curve.field.phase);
    fetch("carrier-detuning", curve.field.carrier_detuning);
    fetch("rtol", curve.meta.rtol);
    fetch("atol", curve.meta.atol);
    if (auto it = kv.find("transient-periods"); it != kv.end()) {
        curve.meta.transient_periods = static_cast<int>(parse_double(it->second, it->first));
    }
    if (auto it = kv.find("averaging-periods"); it != kv.end()) {
        curve.meta.averaging_periods = static_cast<int>(parse_double(it->second, it->first));
    }
    curve.validate();
    return curve;
}

} // namespace eforce::csvio
