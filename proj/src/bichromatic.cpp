#include "eforce/bichromatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <numbers>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eforce/errors.hpp"
#include "eforce/numerics.hpp"
#include "eforce/ode.hpp"

namespace eforce::bichromatic {

namespace {

constexpr double kPi = std::numbers::pi;

void require_hbar(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("hbar must be positive and finite");
    }
}

} // namespace

void AtomParams::validate() const {
    if (!(lambda_a > 0.0) || !std::isfinite(lambda_a)) {
        throw std::invalid_argument("atom: wavelength must be positive and finite");
    }
    if (!(gamma_nl > 0.0) || !std::isfinite(gamma_nl)) {
        throw std::invalid_argument("atom: linewidth must be positive and finite");
    }
}

void FieldParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("field: delta must be positive and finite");
    }
    if (omega_r < 0.0 || !std::isfinite(omega_r)) {
        throw std::invalid_argument("field: omega_r must be nonnegative and finite");
    }
    if (!std::isfinite(phase) || !std::isfinite(carrier_detuning)) {
        throw std::invalid_argument("field: phase and carrier detuning must be finite");
    }
}

void SweepConfig::validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) {
        throw std::invalid_argument("sweep config: tolerances must be positive");
    }
    if (transient_periods < 0 || averaging_periods < 1) {
        throw std::invalid_argument("sweep config: need >= 0 transient and >= 1 averaging periods");
    }
    if (max_steps_per_period < 100) {
        throw std::invalid_argument("sweep config: step budget too small");
    }
    if (jobs < 0) throw std::invalid_argument("sweep config: jobs must be >= 0");
}

void ForceCurve::validate() const {
    atom.validate();
    field.validate();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].f_mean) || !std::isfinite(points[i].f_spread)) {
            throw std::invalid_argument("force curve: non-finite force");
        }
        if (i > 0 && !(points[i].v > points[i - 1].v)) {
            throw std::invalid_argument("force curve: velocities must increase strictly");
        }
    }
}

DriveSample bichromatic_drive(double z, double t, const AtomParams& atom, const FieldParams& field) {
    const double k = atom.k();
    const double kz = k * z;
    const double sum_env = std::cos(field.delta * t) + std::cos(field.delta * t + field.phase);
    const double dif_env = std::cos(field.delta * t) - std::cos(field.delta * t + field.phase);
    const double amp = 2.0 * field.omega_r;
    const double ck = std::cos(kz);
    const double sk = std::sin(kz);
    DriveSample d;
    d.re = amp * ck * sum_env;
    d.im = amp * sk * dif_env;
    d.dre_dz = -amp * k * sk * sum_env;
    d.dim_dz = amp * k * ck * dif_env;
    return d;
}

namespace {

// Relaxing optical Bloch flow for drive sample d at carrier detuning det:
//   udot = -det*v - Wim*w - (G/2)u
//   vdot =  det*u + Wre*w - (G/2)v
//   wdot =  Wim*u - Wre*v - G(w+1)
// The ground state (0,0,-1) is stationary in the dark; w relaxes at rate G.
inline void bloch_rhs(const DriveSample& d, double gamma, double det,
                      double u, double v, double w,
                      double& du, double& dv, double& dw) {
    du = -det * v - d.im * w - 0.5 * gamma * u;
    dv = det * u + d.re * w - 0.5 * gamma * v;
    dw = d.im * u - d.re * v - gamma * (w + 1.0);
}

inline double force_of(const DriveSample& d, double u, double v, double hbar) {
    return -0.5 * hbar * (u * d.dre_dz + v * d.dim_dz);
}

struct MonoDrive {
    double omega_r = 0.0;
    double k = 1.0;
    DriveSample operator()(double z, double) const {
        const double kz = k * z;
        DriveSample d;
        d.re = omega_r * std::cos(kz);
        d.im = omega_r * std::sin(kz);
        d.dre_dz = -omega_r * k * std::sin(kz);
        d.dim_dz = omega_r * k * std::cos(kz);
        return d;
    }
};

struct BichroDrive {
    const AtomParams* atom;
    const FieldParams* field;
    DriveSample operator()(double z, double t) const {
        return bichromatic_drive(z, t, *atom, *field);
    }
};

// Shared trajectory-averaging engine. period sets both the window unit and
// the per-window step budget; sampling windows are whole multiples of it.
template <typename DriveFn>
ForceSample average_windows(double v, const DriveFn& drive, double gamma, double det,
                            double period, const SweepConfig& cfg, double hbar) {
    ode::DormandPrince<4> rk;
    rk.rtol = cfg.rtol;
    rk.atol = cfg.atol;
    rk.max_steps = cfg.max_steps_per_period;

    using State = std::array<double, 4>;  // u, v, w, accumulated impulse
    State y{0.0, 0.0, -1.0, 0.0};

    auto rhs = [&](double t, const State& s, State& dy) {
        const DriveSample d = drive(v * t, t);
        bloch_rhs(d, gamma, det, s[0], s[1], s[2], dy[0], dy[1], dy[2]);
        dy[3] = force_of(d, s[0], s[1], hbar);
    };
    auto contain = [](double t, const State& s) {
        const double n2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
        if (!(n2 <= 1.0 + 1e-6)) {
            std::ostringstream os;
            os << "bloch vector left the unit ball (|r|^2 = " << n2 << " at t = " << t << ")";
            throw NumericError(os.str());
        }
    };

    double h = 0.0;
    const int total = cfg.transient_periods + cfg.averaging_periods;
    std::vector<double> window_means;
    window_means.reserve(static_cast<std::size_t>(cfg.averaging_periods));
    for (int p = 0; p < total; ++p) {
        const double j0 = y[3];
        rk.integrate_observed(rhs, y, period * p, period * (p + 1), h, nullptr, contain);
        if (p >= cfg.transient_periods) window_means.push_back((y[3] - j0) / period);
    }
    const numerics::MeanStd ms = numerics::mean_std(window_means);
    return ForceSample{ms.mean, ms.std_dev};
}

} // namespace

BlochVector obe_step(const BlochVector& state, double z, double t,
                     const AtomParams& atom, const FieldParams& field) {
    atom.validate();
    field.validate();
    const DriveSample d = bichromatic_drive(z, t, atom, field);
    BlochVector dy;
    bloch_rhs(d, atom.gamma_nl, field.carrier_detuning, state.u, state.v, state.w,
              dy.u, dy.v, dy.w);
    return dy;
}

double instantaneous_force(const BlochVector& state, double z, double t,
                           const AtomParams& atom, const FieldParams& field, double hbar) {
    atom.validate();
    field.validate();
    require_hbar(hbar);
    const DriveSample d = bichromatic_drive(z, t, atom, field);
    return force_of(d, state.u, state.v, hbar);
}

double radiative_force_limit(const AtomParams& atom, double hbar) {
    atom.validate();
    require_hbar(hbar);
    return 0.5 * hbar * atom.k() * atom.gamma_nl;
}

double ideal_bichromatic_force(const AtomParams& atom, const FieldParams& field, double hbar) {
    atom.validate();
    field.validate();
    require_hbar(hbar);
    return 2.0 * hbar * atom.k() * field.delta / kPi;
}

double pi_pulse_rabi(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("pi_pulse_rabi: delta must be positive");
    return 0.25 * kPi * delta;
}

double practical_rabi(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("practical_rabi: delta must be positive");
    return delta;
}

double saturation_intensity(const AtomParams& atom, double h, double c) {
    atom.validate();
    if (!(h > 0.0) || !(c > 0.0)) {
        throw std::invalid_argument("saturation_intensity: h and c must be positive");
    }
    const double l3 = atom.lambda_a * atom.lambda_a * atom.lambda_a;
    return kPi * h * c / (3.0 * l3 * atom.tau());
}

double rabi_from_intensity(double intensity, double i_sat, double gamma_nl) {
    if (intensity < 0.0) throw std::invalid_argument("rabi_from_intensity: negative intensity");
    if (!(i_sat > 0.0)) throw std::invalid_argument("rabi_from_intensity: i_sat must be positive");
    if (!(gamma_nl > 0.0)) throw std::invalid_argument("rabi_from_intensity: linewidth must be positive");
    return gamma_nl * std::sqrt(intensity / (2.0 * i_sat));
}

double monochromatic_steady_force(const AtomParams& atom, double s, double carrier_detuning,
                                  double hbar) {
    atom.validate();
    require_hbar(hbar);
    if (s < 0.0 || !std::isfinite(s)) {
        throw std::invalid_argument("monochromatic_steady_force: s must be finite and >= 0");
    }
    const double dn = 2.0 * carrier_detuning / atom.gamma_nl;
    return radiative_force_limit(atom, hbar) * s / (1.0 + s + dn * dn);
}

ForceSample average_force(double v, const AtomParams& atom, const FieldParams& field,
                          const SweepConfig& cfg, double hbar) {
    atom.validate();
    field.validate();
    cfg.validate();
    require_hbar(hbar);
    if (!std::isfinite(v)) throw std::invalid_argument("average_force: velocity must be finite");
    const BichroDrive drive{&atom, &field};
    return average_windows(v, drive, atom.gamma_nl, field.carrier_detuning,
                           field.beat_period(), cfg, hbar);
}

ForceSample average_force_monochromatic(double v, const AtomParams& atom, double s,
                                        double carrier_detuning, const SweepConfig& cfg,
                                        double hbar) {
    atom.validate();
    cfg.validate();
    require_hbar(hbar);
    if (s < 0.0 || !std::isfinite(s)) {
        throw std::invalid_argument("average_force_monochromatic: s must be finite and >= 0");
    }
    const MonoDrive drive{atom.gamma_nl * std::sqrt(0.5 * s), atom.k()};
    return average_windows(v, drive, atom.gamma_nl, carrier_detuning, atom.tau(), cfg, hbar);
}

namespace {

SymmetryDefect symmetry_defect(const std::vector<CurvePoint>& pts) {
    SymmetryDefect d;
    const std::size_t n = pts.size();
    if (n < 2) return d;
    double vmax = 0.0, fmax = 0.0;
    for (const CurvePoint& p : pts) {
        vmax = std::max(vmax, std::abs(p.v));
        fmax = std::max(fmax, std::abs(p.f_mean));
    }
    if (vmax == 0.0) return d;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(pts[i].v + pts[n - 1 - i].v) > 1e-9 * vmax) return d;
    }
    d.computed = true;
    if (fmax == 0.0) return d;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double f1 = pts[i].f_mean;
        const double f2 = pts[n - 1 - i].f_mean;
        d.even_defect = std::max(d.even_defect, std::abs(f1 - f2) / fmax);
        d.odd_defect = std::max(d.odd_defect, std::abs(f1 + f2) / fmax);
    }
    return d;
}

ForceCurve run_sweep(const AtomParams& atom, const FieldParams& field, const SweepConfig& cfg,
                     double hbar, bool parallel) {
    atom.validate();
    field.validate();
    cfg.validate();
    require_hbar(hbar);
    if (cfg.velocities.empty()) {
        throw std::invalid_argument("sweep: empty velocity grid");
    }
    for (std::size_t i = 0; i < cfg.velocities.size(); ++i) {
        if (!std::isfinite(cfg.velocities[i])) throw std::invalid_argument("sweep: non-finite velocity");
        if (i > 0 && !(cfg.velocities[i] > cfg.velocities[i - 1])) {
            throw std::invalid_argument("sweep: velocities must increase strictly");
        }
    }

    ForceCurve curve;
    curve.atom = atom;
    curve.field = field;
    curve.meta.transient_periods = cfg.transient_periods;
    curve.meta.averaging_periods = cfg.averaging_periods;
    curve.meta.rtol = cfg.rtol;
    curve.meta.atol = cfg.atol;

    const std::size_t n = cfg.velocities.size();
    curve.points.resize(n);
    std::vector<std::exception_ptr> failures(n);

    auto eval_point = [&](std::size_t i) {
        try {
            const double v = cfg.velocities[i];
            const ForceSample s = average_force(v, atom, field, cfg, hbar);
            curve.points[i] = CurvePoint{v, s.mean, s.spread};
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

#ifdef _OPENMP
    if (parallel) {
        const int jobs = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            eval_point(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) eval_point(i);
    }
#else
    (void)parallel;
    for (std::size_t i = 0; i < n; ++i) eval_point(i);
#endif

    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i]) continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const NumericError& e) {
            std::ostringstream os;
            os << "sweep point v = " << cfg.velocities[i] << ": " << e.what();
            throw NumericError(os.str());
        }
        // non-numeric failures propagate as thrown
    }

    curve.meta.symmetry = symmetry_defect(curve.points);
    return curve;
}

} // namespace

ForceCurve sweep(const AtomParams& atom, const FieldParams& field, const SweepConfig& cfg,
                 double hbar) {
    return run_sweep(atom, field, cfg, hbar, true);
}

ForceCurve sweep_serial(const AtomParams& atom, const FieldParams& field, const SweepConfig& cfg,
                        double hbar) {
    return run_sweep(atom, field, cfg, hbar, false);
}

} // namespace eforce::bichromatic
