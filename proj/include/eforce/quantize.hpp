#pragma once

#include "eforce/kinematics.hpp"

namespace eforce::quantize {

using kinematics::ExistenceSeries;
using kinematics::OscillatorParams;
using kinematics::Trajectory;

/// How the cycle integrand obtains xdot: sampled finite differences, or the
/// closed form -x0 w sin(wt + phi) when the trajectory came from the SHM
/// generator with the same params.
enum class VelocityModel { FiniteDifference, AnalyticShm };

/// Cycle integral reduced against the quantum of action h = 2*pi*hbar.
/// value holds |integral|; sign keeps the orientation of the raw integral.
struct ActionResult {
    double value = 0.0;
    int sign = 0;
    double n_fit = 0.0;
    long nearest_n = 0;   // nearest nonnegative integer to n_fit
    double residual = 0.0;  // |n_fit - nearest_n|, always in [0, 0.5]
};

/// Integral of p dx over one closed orbit, evaluated as int m xdot^2 dt.
/// The grid must span one period 2*pi/w to 1e-6 relative.
ActionResult action_pdx(const Trajectory& traj, const OscillatorParams& params,
                        VelocityModel model = VelocityModel::FiniteDifference,
                        double hbar = 1.0);

/// Integral of F de over the same orbit, evaluated as int (-m w^2 x) x dt.
/// Negative for SHM; the magnitude equals action_pdx.
ActionResult action_Fde(const Trajectory& traj, const ExistenceSeries& series,
                        const OscillatorParams& params, double hbar = 1.0);

/// Amplitude whose orbit encloses n quanta of action: sqrt(n h/(pi m w)).
/// n = 0 returns the degenerate orbit x0 = 0.
double quantized_amplitude(long n, const OscillatorParams& params, double hbar = 1.0);

/// (1/2) m w^2 x0^2 for the params' amplitude.
double orbit_energy(const OscillatorParams& params);

double angular_momentum(double n, double hbar = 1.0);
double photon_energy(double nu, double hbar = 1.0);
double de_broglie_momentum(double lambda, double hbar = 1.0);

struct QuantumForceSpec {
    long n = 1;
    double k_wave = 1.0;  // 1/length
    double f_e = 1.0;     // 1/time

    void validate() const;
};

/// n hbar k f_e; the equivalent form n h/(lambda tau_e) is evaluated as a
/// cross-check and must agree to 1e-12 relative.
double quantum_force(const QuantumForceSpec& spec, double hbar = 1.0);

/// Spread product De*DF for oscillator eigenstate n, computed through the
/// chart factors De = Dp/(m w^2), DF = m w^2 Dx; equals (n + 1/2) hbar.
double uncertainty_product_shm(long n, const OscillatorParams& params, double hbar = 1.0);

} // namespace eforce::quantize
