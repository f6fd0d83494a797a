#include "eforce/quantize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eforce/errors.hpp"
#include "eforce/numerics.hpp"

namespace eforce::quantize {

namespace {

constexpr double kPi = std::numbers::pi;

double planck_h(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("hbar must be positive and finite");
    }
    return 2.0 * kPi * hbar;
}

void require_one_period(const Trajectory& traj, const OscillatorParams& params) {
    traj.validate();
    params.validate();
    const double T = params.period();
    const double span = traj.grid.span();
    if (std::abs(span - T) > 1e-6 * T) {
        throw std::invalid_argument("trajectory must span exactly one period (got " +
                                    std::to_string(span) + ", period " + std::to_string(T) + ")");
    }
}

ActionResult reduce_action(double raw, double hbar) {
    ActionResult r;
    r.value = std::abs(raw);
    r.sign = raw > 0.0 ? 1 : (raw < 0.0 ? -1 : 0);
    r.n_fit = r.value / planck_h(hbar);
    long n = std::llround(r.n_fit);
    if (n < 0) n = 0;
    r.nearest_n = n;
    r.residual = std::abs(r.n_fit - static_cast<double>(n));
    return r;
}

} // namespace

ActionResult action_pdx(const Trajectory& traj, const OscillatorParams& params,
                        VelocityModel model, double hbar) {
    require_one_period(traj, params);
    const std::size_t n = traj.x.size();
    std::vector<double> integrand(n);
    if (model == VelocityModel::AnalyticShm) {
        for (std::size_t i = 0; i < n; ++i) {
            const double xdot = -params.x0 * params.omega *
                                std::sin(params.omega * traj.grid.time(i) + params.phi);
            integrand[i] = params.m * xdot * xdot;
        }
    } else {
        const std::vector<double> xdot = numerics::derivative_samples(traj.x, traj.grid.dt);
        for (std::size_t i = 0; i < n; ++i) integrand[i] = params.m * xdot[i] * xdot[i];
    }
    return reduce_action(numerics::integrate_samples(integrand, traj.grid.dt), hbar);
}

ActionResult action_Fde(const Trajectory& traj, const ExistenceSeries& series,
                        const OscillatorParams& params, double hbar) {
    require_one_period(traj, params);
    series.validate();
    if (!(traj.grid == series.grid)) {
        throw std::invalid_argument("trajectory and existence series use different grids");
    }
    const double mw2 = params.m * params.omega * params.omega;
    const std::size_t n = traj.x.size();
    // de = x dt along the orbit, so the integrand is F * x
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) integrand[i] = -mw2 * traj.x[i] * traj.x[i];
    return reduce_action(numerics::integrate_samples(integrand, traj.grid.dt), hbar);
}

double quantized_amplitude(long n, const OscillatorParams& params, double hbar) {
    params.validate();
    if (n < 0) throw std::invalid_argument("quantized_amplitude: n must be nonnegative");
    if (n == 0) return 0.0;
    return std::sqrt(static_cast<double>(n) * planck_h(hbar) / (kPi * params.m * params.omega));
}

double orbit_energy(const OscillatorParams& params) {
    params.validate();
    return 0.5 * params.m * params.omega * params.omega * params.x0 * params.x0;
}

double angular_momentum(double n, double hbar) {
    return n * planck_h(hbar) / (2.0 * kPi);
}

double photon_energy(double nu, double hbar) {
    if (!(nu > 0.0)) throw std::invalid_argument("photon_energy: frequency must be positive");
    return planck_h(hbar) * nu;
}

double de_broglie_momentum(double lambda, double hbar) {
    if (!(lambda > 0.0)) throw std::invalid_argument("de_broglie_momentum: wavelength must be positive");
    return planck_h(hbar) / lambda;
}

void QuantumForceSpec::validate() const {
    if (n < 1) throw std::invalid_argument("quantum force: n must be >= 1");
    if (!(k_wave > 0.0) || !std::isfinite(k_wave)) {
        throw std::invalid_argument("quantum force: k_wave must be positive");
    }
    if (!(f_e > 0.0) || !std::isfinite(f_e)) {
        throw std::invalid_argument("quantum force: f_e must be positive");
    }
}

double quantum_force(const QuantumForceSpec& spec, double hbar) {
    spec.validate();
    const double direct = static_cast<double>(spec.n) * hbar * spec.k_wave * spec.f_e;
    const double lambda = 2.0 * kPi / spec.k_wave;
    const double tau_e = 1.0 / spec.f_e;
    const double via_h = static_cast<double>(spec.n) * planck_h(hbar) / (lambda * tau_e);
    if (std::abs(direct - via_h) > 1e-12 * std::abs(direct)) {
        throw NumericError("quantum_force: algebraic forms disagree beyond 1e-12");
    }
    return direct;
}

double uncertainty_product_shm(long n, const OscillatorParams& params, double hbar) {
    params.validate();
    if (n < 0) throw std::invalid_argument("uncertainty product: n must be nonnegative");
    const double mw = params.m * params.omega;
    const double mw2 = mw * params.omega;
    const double half_quanta = (static_cast<double>(n) + 0.5) * hbar;
    const double dx = std::sqrt(half_quanta / mw);
    const double dp = std::sqrt(half_quanta * mw);
    const double de = dp / mw2;
    const double dF = mw2 * dx;
    return de * dF;
}

} // namespace eforce::quantize
