// Batch front end: every verb reads flags (plus an optional flat key=value
// config file, flags winning), writes one CSV or JSON payload to stdout or
// --out, and keeps diagnostics on stderr. Exit codes: 0 ok, 1 usage,
// 2 numeric failure, 3 I/O failure.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eforce/analysis.hpp"
#include "eforce/bichromatic.hpp"
#include "eforce/canonical.hpp"
#include "eforce/csvio.hpp"
#include "eforce/errors.hpp"
#include "eforce/kinematics.hpp"
#include "eforce/numerics.hpp"
#include "eforce/quantize.hpp"
#include "eforce/relativity.hpp"

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest decimal string that round-trips the double. Used for single-row
// output and command echoes; bulk CSV columns go through csvio::fmt17.
std::string fmtshort(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

// ----------------------------------------------------------- config --------
// Flat `key = value` files, `#` comments. A key is skipped when any of its
// owning flags was given on the command line, so flags always win.

std::string trim_ws(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double cfg_num(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (trim_ws(raw.substr(pos)).empty()) return v;
    } catch (...) {
    }
    throw std::invalid_argument("config key '" + key + "' has a non-numeric value: " + raw);
}

long cfg_int(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(raw, &pos);
        if (trim_ws(raw.substr(pos)).empty()) return v;
    } catch (...) {
    }
    throw std::invalid_argument("config key '" + key + "' has a non-integer value: " + raw);
}

bool cfg_flag(const std::string& key, const std::string& raw) {
    std::string v;
    for (char ch : raw) v.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config key '" + key + "' has a non-boolean value: " + raw);
}

struct ConfigKey {
    std::string key;
    std::vector<std::string> owners;  // command-line presence of any owner wins
    std::function<void(const std::string&)> set;
};

ConfigKey bind_num(const char* key, double* slot) {
    return {key,
            {std::string("--") + key},
            [slot, k = std::string(key)](const std::string& v) { *slot = cfg_num(k, v); }};
}

ConfigKey bind_int(const char* key, int* slot) {
    return {key,
            {std::string("--") + key},
            [slot, k = std::string(key)](const std::string& v) { *slot = static_cast<int>(cfg_int(k, v)); }};
}

ConfigKey bind_flag(const char* key, bool* slot) {
    return {key,
            {std::string("--") + key},
            [slot, k = std::string(key)](const std::string& v) { *slot = cfg_flag(k, v); }};
}

void apply_config(const CLI::App* sub, const std::string& path, const std::vector<ConfigKey>& keys) {
    if (path.empty()) return;
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open config file: " + path);

    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim_ws(line);
        if (line.empty()) continue;

        const auto where = path + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected key = value");
        const std::string key = trim_ws(line.substr(0, eq));
        const std::string value = trim_ws(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument(where + ": empty key");

        const ConfigKey* binding = nullptr;
        for (const ConfigKey& k : keys)
            if (k.key == key) binding = &k;
        if (binding == nullptr)
            throw std::invalid_argument(where + ": unknown config key '" + key + "'");

        bool overridden = false;
        for (const std::string& owner : binding->owners) {
            const CLI::Option* op = sub->get_option_no_throw(owner);
            if (op != nullptr && op->count() > 0) overridden = true;
        }
        if (!overridden) binding->set(value);
    }
}

void deliver(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        std::cout.flush();
        if (!std::cout) throw IoError("write to standard output failed");
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw IoError("cannot open output file: " + out_path);
    os << payload;
    os.flush();
    if (!os) throw IoError("write failed: " + out_path);
}

void require_out_for_gnuplot(bool gnuplot, const std::string& out_path) {
    if (gnuplot && out_path.empty())
        throw std::invalid_argument("--gnuplot needs --out to name the CSV the script will read");
}

void deliver_gnuplot(const std::string& out_path, const std::string& script) {
    const std::string path = out_path + ".gp";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open plot script: " + path);
    os << script;
    os.flush();
    if (!os) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------- shm ------

struct ShmArgs {
    double m = 1.0, omega = 1.0, x0 = 1.0, phi = 0.0;
    int periods = 1;
    int spp = 1024;
    std::string out;
    bool gnuplot = false;
    std::string config;
};

void run_shm(const ShmArgs& a) {
    require_out_for_gnuplot(a.gnuplot, a.out);
    eforce::kinematics::OscillatorParams p{a.m, a.omega, a.x0, a.phi};
    p.validate();

    eforce::kinematics::TimeGrid grid;
    grid.t0 = 0.0;
    grid.dt = p.period() / a.spp;
    grid.n = static_cast<std::size_t>(a.periods) * a.spp + 1;

    const auto [traj, series] = eforce::kinematics::shm_trajectory(p, grid);
    const std::vector<double> el = eforce::canonical::euler_lagrange_residual(traj, series, p);

    std::ostringstream os;
    os << "# cmd: eforce shm --m " << fmtshort(a.m) << " --omega " << fmtshort(a.omega)
       << " --x0 " << fmtshort(a.x0) << " --phi " << fmtshort(a.phi) << " --periods " << a.periods
       << " --samples-per-period " << a.spp << "\n";
    os << "t,x,e,F,Qe,el_residual\n";
    for (std::size_t i = 0; i < grid.n; ++i) {
        os << eforce::csvio::fmt17(grid.time(i)) << ',' << eforce::csvio::fmt17(traj.x[i]) << ','
           << eforce::csvio::fmt17(series.e[i]) << ','
           << eforce::csvio::fmt17(eforce::canonical::conjugate_momentum(traj.x[i], p)) << ','
           << eforce::csvio::fmt17(eforce::canonical::generalized_force(series.e[i], p)) << ','
           << eforce::csvio::fmt17(el[i]) << "\n";
    }
    deliver(a.out, os.str());

    if (a.gnuplot) {
        std::ostringstream gp;
        gp << "set datafile separator \",\"\n"
           << "set datafile commentschars \"#\"\n"
           << "set key outside\n"
           << "set xlabel \"t\"\n"
           << "plot \"" << a.out << "\" using 1:2 with lines title \"x\", \\\n"
           << "     \"\" using 1:3 with lines title \"e\", \\\n"
           << "     \"\" using 1:4 with lines title \"F\"\n";
        deliver_gnuplot(a.out, gp.str());
    }
}

// ------------------------------------------------------------ lorentz ------

struct LorentzArgs {
    double u = 0.0, v = 0.0, x = 0.0, ct = 0.0, e = 0.0, e12 = 0.0, c = 1.0;
    std::string config;
};

void run_lorentz(const LorentzArgs& a) {
    if (!(a.c > 0.0) || !std::isfinite(a.c)) throw std::invalid_argument("--c must be positive");
    if (!(std::abs(a.u) < a.c))
        throw std::invalid_argument("--u is superluminal: |u| must be below c");
    if (!(std::abs(a.v) < a.c))
        throw std::invalid_argument("--v is superluminal: |v| must be below c");

    const eforce::relativity::Boost boost{a.u, a.c};
    const eforce::relativity::FrameState in{a.v, a.x, a.ct, a.e};
    const eforce::relativity::FrameState out = eforce::relativity::transform_state(in, a.e12, boost);

    std::ostringstream os;
    os << fmtshort(out.v) << ',' << fmtshort(out.x) << ',' << fmtshort(out.ct) << ','
       << fmtshort(out.e) << "\n";
    deliver({}, os.str());
}

// ------------------------------------------------------------- action ------

struct ActionArgs {
    double m = 1.0, omega = 1.0, x0 = 1.0, hbar = 1.0;
    long n = -1;  // -1: amplitude given directly
    int spp = 2048;
    std::string config;
};

void run_action(const ActionArgs& a) {
    eforce::kinematics::OscillatorParams p{a.m, a.omega, a.x0, 0.0};
    const bool from_n = a.n >= 0;
    if (from_n) p.x0 = eforce::quantize::quantized_amplitude(a.n, p, a.hbar);
    p.validate();

    eforce::kinematics::TimeGrid grid;
    grid.dt = p.period() / a.spp;
    grid.n = static_cast<std::size_t>(a.spp) + 1;
    const auto [traj, series] = eforce::kinematics::shm_trajectory(p, grid);

    const auto pdx = eforce::quantize::action_pdx(traj, p, eforce::quantize::VelocityModel::AnalyticShm, a.hbar);
    const auto fde = eforce::quantize::action_Fde(traj, series, p, a.hbar);

    nlohmann::ordered_json j;
    if (from_n) j["x0"] = p.x0;
    j["pdx"] = pdx.value * pdx.sign;
    j["Fde_abs"] = fde.value;
    j["Fde_sign"] = fde.sign;
    j["n_fit"] = pdx.n_fit;
    j["nearest_n"] = pdx.nearest_n;
    j["residual"] = pdx.residual;
    deliver({}, j.dump(2) + "\n");
}

// -------------------------------------------------------- canon check ------

struct CanonArgs {
    double m = 1.0, omega = 1.0, x0 = 1.0, phi = 0.0;
    int spp = 4096;
    std::string config;
};

void run_canon_check(const CanonArgs& a) {
    eforce::kinematics::OscillatorParams p{a.m, a.omega, a.x0, a.phi};
    p.validate();

    eforce::kinematics::TimeGrid grid;
    grid.dt = p.period() / a.spp;
    grid.n = static_cast<std::size_t>(a.spp) + 1;
    const auto [traj, series] = eforce::kinematics::shm_trajectory(p, grid);

    const std::vector<double> el = eforce::canonical::euler_lagrange_residual(traj, series, p);
    double el_max = 0.0;
    for (double r : el) el_max = std::max(el_max, std::abs(r));

    const auto ham = eforce::canonical::hamilton_residual(traj, series, p);
    double ham_max = 0.0;
    for (double r : ham.r_e) ham_max = std::max(ham_max, std::abs(r));
    for (double r : ham.r_F) ham_max = std::max(ham_max, std::abs(r));

    const double mw2 = p.spring_constant();
    const eforce::canonical::ScalarField field_e{[mw2](double, double pp) { return -pp / mw2; }, 1e-5};
    const eforce::canonical::ScalarField field_F{[mw2](double q, double) { return -mw2 * q; }, 1e-5};
    const eforce::canonical::ScalarField field_q{[](double q, double) { return q; }, 1e-5};
    const eforce::canonical::ScalarField field_p{[](double, double pp) { return pp; }, 1e-5};
    const eforce::canonical::PhaseSpacePoint pt{eforce::canonical::Chart::XP, 0.3, 0.7};

    nlohmann::ordered_json j;
    j["el_residual_max"] = el_max;
    j["hamilton_residual_max"] = ham_max;
    j["bracket_eF"] = eforce::canonical::poisson_bracket(field_e, field_F, pt);
    j["bracket_qp"] = eforce::canonical::poisson_bracket(field_q, field_p, pt);
    deliver({}, j.dump(2) + "\n");
}

// ------------------------------------------------------- bichro sweep ------

struct SweepArgs {
    double delta = 40.0;
    double rabi = -1.0;  // <0: not set
    bool pi_pulse = false;
    double phase = 0.75 * std::numbers::pi;
    double carrier_detuning = 0.0;
    double vmin = -30.0, vmax = 30.0;
    int steps = 121;
    int transient = 20, averaging = 100;
    double rtol = 1e-8, atol = 1e-10;
    int jobs = 0;
    double hbar = 1.0;
    std::string out;
    bool gnuplot = false;
    std::string config;
};

void run_bichro_sweep(const SweepArgs& a) {
    require_out_for_gnuplot(a.gnuplot, a.out);
    if (!a.pi_pulse && a.rabi < 0.0)
        throw std::invalid_argument("bichro sweep needs --rabi or --pi-pulse");
    if (a.pi_pulse && a.rabi >= 0.0)
        throw std::invalid_argument("rabi and pi-pulse are mutually exclusive");
    eforce::bichromatic::AtomParams atom;
    eforce::bichromatic::FieldParams field;
    field.delta = a.delta;
    field.phase = a.phase;
    field.carrier_detuning = a.carrier_detuning;
    field.omega_r = a.pi_pulse ? eforce::bichromatic::pi_pulse_rabi(a.delta) : a.rabi;

    if (!field.well_separated(atom))
        std::cerr << "warning: delta below 10 linewidths, the beat-pulse picture degrades\n";

    eforce::bichromatic::SweepConfig cfg;
    cfg.velocities = eforce::numerics::linspace(a.vmin, a.vmax, static_cast<std::size_t>(a.steps));
    cfg.rtol = a.rtol;
    cfg.atol = a.atol;
    cfg.transient_periods = a.transient;
    cfg.averaging_periods = a.averaging;
    cfg.jobs = a.jobs;

    const auto curve = eforce::bichromatic::sweep(atom, field, cfg, a.hbar);

    // The echo is rebuilt from the resolved data-defining parameters, so runs
    // that differ only in worker count or output path stay byte-identical.
    std::ostringstream cmd;
    cmd << "eforce bichro sweep --delta " << fmtshort(field.delta) << " --rabi "
        << fmtshort(field.omega_r) << " --phase " << fmtshort(field.phase)
        << " --carrier-detuning " << fmtshort(field.carrier_detuning) << " --vmin "
        << fmtshort(a.vmin) << " --vmax " << fmtshort(a.vmax) << " --steps " << a.steps
        << " --transient " << a.transient << " --averaging " << a.averaging << " --rtol "
        << fmtshort(a.rtol) << " --atol " << fmtshort(a.atol) << " --hbar " << fmtshort(a.hbar);

    std::ostringstream os;
    eforce::csvio::write_force_curve(os, curve, cmd.str());
    deliver(a.out, os.str());

    if (a.gnuplot) {
        std::ostringstream gp;
        gp << "set datafile separator \",\"\n"
           << "set datafile commentschars \"#\"\n"
           << "set xlabel \"v  [Gamma/k]\"\n"
           << "set ylabel \"F  [hbar k Gamma]\"\n"
           << "set grid\n"
           << "plot \"" << a.out << "\" using 1:($2-$3):($2+$3) with filledcurves "
           << "fc rgb \"#c8c8c8\" fs transparent solid 0.4 title \"period spread\", \\\n"
           << "     \"\" using 1:2 with linespoints pt 7 ps 0.4 title \"mean force\"\n";
        deliver_gnuplot(a.out, gp.str());
    }
}

// ------------------------------------------------------ bichro analyze -----

struct AnalyzeArgs {
    std::string csv;
    double unit = 0.0;        // 0: hbar k Gamma / 2 from curve metadata
    double prominence = 0.0;  // 0: 5% of max |F|
    double hbar = 1.0;
    std::string out;
    std::string peaks_csv;
    std::string config;
};

void run_bichro_analyze(const AnalyzeArgs& a) {
    std::ifstream is(a.csv, std::ios::binary);
    if (!is) throw IoError("cannot open curve file: " + a.csv);
    const auto curve = eforce::csvio::read_force_curve(is);

    double prom = a.prominence;
    if (prom <= 0.0) {
        double fmax = 0.0;
        for (const auto& pt : curve.points) fmax = std::max(fmax, std::abs(pt.f_mean));
        prom = 0.05 * fmax;
        if (prom <= 0.0) throw std::invalid_argument("curve is identically zero, nothing to analyze");
    }

    const auto report =
        eforce::analysis::build_report(curve, curve.atom, curve.field, prom, a.unit, a.hbar);

    nlohmann::ordered_json j;
    j["unit"] = report.unit;
    j["peaks"] = nlohmann::ordered_json::array();
    for (const auto& p : report.peaks) {
        j["peaks"].push_back({{"v_peak", p.v_peak},
                              {"f_peak", p.f_peak},
                              {"n_nearest", p.n_nearest},
                              {"residual", p.residual},
                              {"prominence", p.prominence}});
    }
    j["velocity_fits"] = nlohmann::ordered_json::array();
    for (const auto& vf : report.velocity_fits) {
        j["velocity_fits"].push_back({{"n", vf.n},
                                      {"v_expected", vf.v_expected},
                                      {"v_peak", vf.v_peak},
                                      {"mismatch", vf.mismatch}});
    }
    j["power_checks"] = nlohmann::ordered_json::array();
    for (const auto& pc : report.power_checks) {
        j["power_checks"].push_back(
            {{"power", pc.power}, {"bound", pc.bound}, {"satisfied", pc.satisfied}});
    }
    deliver(a.out, j.dump(2) + "\n");

    if (!a.peaks_csv.empty()) {
        std::ostringstream os;
        os << "v_peak,F_peak,n,residual\n";
        for (const auto& p : report.peaks) {
            os << eforce::csvio::fmt17(p.v_peak) << ',' << eforce::csvio::fmt17(p.f_peak) << ','
               << p.n_nearest << ',' << eforce::csvio::fmt17(p.residual) << "\n";
        }
        deliver(a.peaks_csv, os.str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"existence-variable oscillator mechanics and bichromatic force toolkit"};
    app.require_subcommand(1);

    ShmArgs shm_args;
    auto* shm = app.add_subcommand("shm", "oscillator table: t,x,e,F,Qe,el_residual CSV");
    shm->add_option("--m", shm_args.m, "oscillator mass")->capture_default_str();
    shm->add_option("--omega", shm_args.omega, "angular frequency")->capture_default_str();
    shm->add_option("--x0", shm_args.x0, "amplitude (0 allowed)")->capture_default_str();
    shm->add_option("--phi", shm_args.phi, "initial phase")->capture_default_str();
    shm->add_option("--periods", shm_args.periods, "whole periods to emit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    shm->add_option("--samples-per-period", shm_args.spp, "grid resolution")
        ->check(CLI::Range(4, 1 << 22))
        ->capture_default_str();
    shm->add_option("--out", shm_args.out, "output file (default stdout)");
    shm->add_flag("--gnuplot", shm_args.gnuplot, "also write <out>.gp plot script");
    shm->add_option("--config", shm_args.config, "flat key=value parameter file (flags override it)");

    LorentzArgs lor_args;
    auto* lor = app.add_subcommand("lorentz", "boost one kinematic state: prints v2,x2,ct2,e2");
    lor->add_option("--u", lor_args.u, "boost velocity of frame 1 in frame 2")->required();
    lor->add_option("--v", lor_args.v, "object velocity in frame 1")->capture_default_str();
    lor->add_option("--x", lor_args.x, "position in frame 1")->capture_default_str();
    lor->add_option("--ct", lor_args.ct, "scaled time in frame 1")->capture_default_str();
    lor->add_option("--e", lor_args.e, "existence in frame 1")->capture_default_str();
    lor->add_option("--e12", lor_args.e12, "existence frame 1 accumulates in frame 2")
        ->capture_default_str();
    lor->add_option("--c", lor_args.c, "speed of light")->capture_default_str();
    lor->add_option("--config", lor_args.config, "flat key=value parameter file (flags override it)");

    ActionArgs act_args;
    auto* act = app.add_subcommand("action", "closed-orbit action integrals reduced against h");
    act->add_option("--m", act_args.m, "oscillator mass")->capture_default_str();
    act->add_option("--omega", act_args.omega, "angular frequency")->capture_default_str();
    auto* act_x0 = act->add_option("--x0", act_args.x0, "amplitude")->capture_default_str();
    auto* act_n = act->add_option("--n", act_args.n, "pick the amplitude enclosing n action quanta")
                      ->check(CLI::NonNegativeNumber);
    act_n->excludes(act_x0);
    act->add_option("--samples-per-period", act_args.spp, "quadrature resolution")
        ->check(CLI::Range(8, 1 << 22))
        ->capture_default_str();
    act->add_option("--hbar", act_args.hbar, "action quantum scale")->capture_default_str();
    act->add_option("--config", act_args.config, "flat key=value parameter file (flags override it)");

    CanonArgs canon_args;
    auto* canon = app.add_subcommand("canon", "canonical-structure checks");
    canon->require_subcommand(1);
    auto* check = canon->add_subcommand(
        "check", "dynamics residuals and brackets of one oscillator, JSON report");
    check->add_option("--m", canon_args.m, "oscillator mass")->capture_default_str();
    check->add_option("--omega", canon_args.omega, "angular frequency")->capture_default_str();
    check->add_option("--x0", canon_args.x0, "amplitude")->capture_default_str();
    check->add_option("--phi", canon_args.phi, "initial phase")->capture_default_str();
    check->add_option("--samples-per-period", canon_args.spp, "grid resolution")
        ->check(CLI::Range(8, 1 << 22))
        ->capture_default_str();
    check->add_option("--config", canon_args.config, "flat key=value parameter file (flags override it)");

    SweepArgs sweep_args;
    auto* bichro = app.add_subcommand("bichro", "bichromatic force simulation");
    bichro->require_subcommand(1);
    auto* sweep = bichro->add_subcommand("sweep", "mean force vs velocity CSV");
    sweep->add_option("--delta", sweep_args.delta, "bichromatic detuning [Gamma]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* rabi_opt =
        sweep->add_option("--rabi", sweep_args.rabi, "Rabi amplitude per wave [Gamma]")
            ->check(CLI::NonNegativeNumber);
    auto* pi_opt = sweep->add_flag("--pi-pulse", sweep_args.pi_pulse,
                                   "set the Rabi amplitude to pi*delta/4");
    pi_opt->excludes(rabi_opt);
    sweep->add_option("--phase", sweep_args.phase, "beat phase between the envelopes")
        ->capture_default_str();
    sweep->add_option("--carrier-detuning", sweep_args.carrier_detuning,
                      "carrier detuning [Gamma]")
        ->capture_default_str();
    sweep->add_option("--vmin", sweep_args.vmin, "lowest velocity [Gamma/k]")
        ->capture_default_str();
    sweep->add_option("--vmax", sweep_args.vmax, "highest velocity [Gamma/k]")
        ->capture_default_str();
    sweep->add_option("--steps", sweep_args.steps, "grid points")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    sweep->add_option("--transient", sweep_args.transient, "beat periods discarded")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--averaging", sweep_args.averaging, "beat periods averaged")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--rtol", sweep_args.rtol, "integrator relative tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--atol", sweep_args.atol, "integrator absolute tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--jobs", sweep_args.jobs, "sweep workers, 0 = available parallelism")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep->add_option("--hbar", sweep_args.hbar, "force unit scale")->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "output file (default stdout)");
    sweep->add_flag("--gnuplot", sweep_args.gnuplot, "also write <out>.gp plot script");
    sweep->add_option("--config", sweep_args.config, "flat key=value parameter file (flags override it)");

    AnalyzeArgs an_args;
    auto* analyze =
        bichro->add_subcommand("analyze", "peak detection and integer reduction of a force curve");
    analyze->add_option("csv", an_args.csv, "force curve CSV produced by bichro sweep")
        ->required();
    analyze->add_option("--unit", an_args.unit,
                        "force quantum to reduce against (default: hbar k Gamma / 2)");
    analyze->add_option("--prominence", an_args.prominence,
                        "minimum peak prominence (default: 5% of max |F|)");
    analyze->add_option("--hbar", an_args.hbar, "force unit scale")->capture_default_str();
    analyze->add_option("--out", an_args.out, "JSON output file (default stdout)");
    analyze->add_option("--peaks-csv", an_args.peaks_csv,
                        "also write detected peaks as v_peak,F_peak,n,residual");
    analyze->add_option("--config", an_args.config, "flat key=value parameter file (flags override it)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (shm->parsed()) {
            apply_config(shm, shm_args.config,
                         {bind_num("m", &shm_args.m), bind_num("omega", &shm_args.omega),
                          bind_num("x0", &shm_args.x0), bind_num("phi", &shm_args.phi),
                          bind_int("periods", &shm_args.periods),
                          bind_int("samples-per-period", &shm_args.spp)});
            run_shm(shm_args);
        } else if (lor->parsed()) {
            apply_config(lor, lor_args.config,
                         {bind_num("u", &lor_args.u), bind_num("v", &lor_args.v),
                          bind_num("x", &lor_args.x), bind_num("ct", &lor_args.ct),
                          bind_num("e", &lor_args.e), bind_num("e12", &lor_args.e12),
                          bind_num("c", &lor_args.c)});
            run_lorentz(lor_args);
        } else if (act->parsed()) {
            ConfigKey x0_key = bind_num("x0", &act_args.x0);
            x0_key.owners = {"--x0", "--n"};
            ConfigKey n_key{"n", {"--n", "--x0"}, [&act_args](const std::string& v) {
                                act_args.n = cfg_int("n", v);
                            }};
            apply_config(act, act_args.config,
                         {bind_num("m", &act_args.m), bind_num("omega", &act_args.omega),
                          x0_key, n_key, bind_int("samples-per-period", &act_args.spp),
                          bind_num("hbar", &act_args.hbar)});
            run_action(act_args);
        } else if (check->parsed()) {
            apply_config(check, canon_args.config,
                         {bind_num("m", &canon_args.m), bind_num("omega", &canon_args.omega),
                          bind_num("x0", &canon_args.x0), bind_num("phi", &canon_args.phi),
                          bind_int("samples-per-period", &canon_args.spp)});
            run_canon_check(canon_args);
        } else if (sweep->parsed()) {
            ConfigKey rabi_key = bind_num("rabi", &sweep_args.rabi);
            rabi_key.owners = {"--rabi", "--pi-pulse"};
            ConfigKey pi_key = bind_flag("pi-pulse", &sweep_args.pi_pulse);
            pi_key.owners = {"--pi-pulse", "--rabi"};
            apply_config(sweep, sweep_args.config,
                         {bind_num("delta", &sweep_args.delta), rabi_key, pi_key,
                          bind_num("phase", &sweep_args.phase),
                          bind_num("carrier-detuning", &sweep_args.carrier_detuning),
                          bind_num("vmin", &sweep_args.vmin), bind_num("vmax", &sweep_args.vmax),
                          bind_int("steps", &sweep_args.steps),
                          bind_int("transient", &sweep_args.transient),
                          bind_int("averaging", &sweep_args.averaging),
                          bind_num("rtol", &sweep_args.rtol), bind_num("atol", &sweep_args.atol),
                          bind_int("jobs", &sweep_args.jobs), bind_num("hbar", &sweep_args.hbar)});
            run_bichro_sweep(sweep_args);
        } else if (analyze->parsed()) {
            apply_config(analyze, an_args.config,
                         {bind_num("unit", &an_args.unit),
                          bind_num("prominence", &an_args.prominence),
                          bind_num("hbar", &an_args.hbar)});
            run_bichro_analyze(an_args);
        }
    } catch (const eforce::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
