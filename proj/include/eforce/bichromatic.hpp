#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace eforce::bichromatic {

/// Two-level transition. Natural-unit default: lambda = 2*pi so k = 1, and
/// the linewidth sets the time scale.
struct AtomParams {
    double lambda_a = 2.0 * std::numbers::pi;  // transition wavelength
    double gamma_nl = 1.0;                               // natural linewidth

    double k() const { return 2.0 * std::numbers::pi / lambda_a; }
    double tau() const { return 1.0 / gamma_nl; }
    void validate() const;
};

/// Counterpropagating beat-pulse field: four traveling waves at frequencies
/// (carrier +- delta), directions +-k, amplitude omega_r each; phase is the
/// beat offset between the two counterpropagating envelopes.
struct FieldParams {
    double delta = 40.0;      // bichromatic detuning, > 0
    double omega_r = 0.0;     // Rabi amplitude per wave, >= 0
    // Beat phase between the counterpropagating envelopes. 3*pi/4 staggers the
    // pulse trains unevenly, which fixes the direction of the stimulated
    // absorption/emission cycle; the symmetric spacing at pi/2 leaves the cycle
    // direction untied and the mean force collapses.
    double phase = 0.75 * std::numbers::pi;
    double carrier_detuning = 0.0;

    double beat_period() const { return std::numbers::pi / delta; }
    /// Beat pulses shorter than the lifetime require delta well above the
    /// linewidth; below 10x the pulse picture degrades.
    bool well_separated(const AtomParams& atom) const { return delta >= 10.0 * atom.gamma_nl; }
    void validate() const;
};

/// Coherence/inversion parameterization of the two-level density matrix.
/// Ground state is (0, 0, -1); u^2 + v^2 + w^2 stays within the unit ball
/// (up to 1e-6) under the relaxing dynamics.
struct BlochVector {
    double u = 0.0;
    double v = 0.0;
    double w = -1.0;
};

/// Rotating-frame coupling at one (z, t): complex Rabi value and its spatial
/// gradient, the two inputs the dynamics and the force need.
struct DriveSample {
    double re = 0.0;
    double im = 0.0;
    double dre_dz = 0.0;
    double dim_dz = 0.0;
};

/// Four-wave bichromatic coupling 2*Wr*[exp(ikz)cos(dt) + exp(-ikz)cos(dt+phi)].
DriveSample bichromatic_drive(double z, double t, const AtomParams& atom, const FieldParams& field);

/// Time derivative of the Bloch vector under the bichromatic drive, with
/// relaxation gamma_nl and the field's carrier detuning.
BlochVector obe_step(const BlochVector& state, double z, double t,
                     const AtomParams& atom, const FieldParams& field);

/// -(hbar/2)(u dWre/dz + v dWim/dz) at one point of the trajectory.
double instantaneous_force(const BlochVector& state, double z, double t,
                           const AtomParams& atom, const FieldParams& field, double hbar = 1.0);

/// hbar k Gamma / 2, the saturated scattering force.
double radiative_force_limit(const AtomParams& atom, double hbar = 1.0);

/// 2 hbar k delta / pi, one photon momentum per half beat period.
double ideal_bichromatic_force(const AtomParams& atom, const FieldParams& field, double hbar = 1.0);

/// pi delta / 4: each beat pulse carries area pi.
double pi_pulse_rabi(double delta);

/// Empirically favored stronger drive, omega_r = delta.
double practical_rabi(double delta);

/// pi h c / (3 lambda^3 tau), explicit constants.
double saturation_intensity(const AtomParams& atom, double h, double c);

/// Gamma sqrt(I / 2 I_s).
double rabi_from_intensity(double intensity, double i_sat, double gamma_nl);

/// Steady-state scattering force of a single traveling wave at saturation
/// parameter s and carrier detuning: hbar k Gamma/2 * s/(1 + s + (2D/Gamma)^2).
double monochromatic_steady_force(const AtomParams& atom, double s, double carrier_detuning,
                                  double hbar = 1.0);

struct SweepConfig {
    std::vector<double> velocities;  // strictly increasing; used by sweep only
    double rtol = 1e-8;
    double atol = 1e-10;
    int transient_periods = 20;    // beat periods discarded before averaging
    int averaging_periods = 100;   // beat periods averaged over
    long max_steps_per_period = 200000;
    int jobs = 0;  // sweep worker count, 0 = runtime default

    void validate() const;
};

struct ForceSample {
    double mean = 0.0;
    double spread = 0.0;  // between-period standard deviation
};

/// Integrate the dressed atom along z = v t from the ground state, discard
/// the transient, and average the instantaneous force over whole beat
/// periods. Throws NumericError with step diagnostics on non-convergence.
ForceSample average_force(double v, const AtomParams& atom, const FieldParams& field,
                          const SweepConfig& cfg, double hbar = 1.0);

/// Same machinery driven by a single traveling wave of saturation parameter s
/// (the closed-form oracle case). The averaging window unit is 1/Gamma.
ForceSample average_force_monochromatic(double v, const AtomParams& atom, double s,
                                        double carrier_detuning, const SweepConfig& cfg,
                                        double hbar = 1.0);

struct SymmetryDefect {
    bool computed = false;   // true when the velocity grid is symmetric about 0
    double even_defect = 0.0;  // max |F(v) - F(-v)| / max|F|
    double odd_defect = 0.0;   // max |F(v) + F(-v)| / max|F|
};

struct CurvePoint {
    double v = 0.0;
    double f_mean = 0.0;
    double f_spread = 0.0;
};

struct CurveMeta {
    int transient_periods = 0;
    int averaging_periods = 0;
    double rtol = 0.0;
    double atol = 0.0;
    SymmetryDefect symmetry;
};

struct ForceCurve {
    std::vector<CurvePoint> points;
    AtomParams atom;
    FieldParams field;
    CurveMeta meta;

    void validate() const;
};

/// average_force per velocity, assembled in velocity order. May evaluate
/// points in parallel (cfg.jobs workers); output is identical for any worker
/// count. Per-point failures are rethrown with the velocity attached.
ForceCurve sweep(const AtomParams& atom, const FieldParams& field, const SweepConfig& cfg,
                 double hbar = 1.0);

/// Single-threaded reference evaluation of the identical computation.
ForceCurve sweep_serial(const AtomParams& atom, const FieldParams& field, const SweepConfig& cfg,
                        double hbar = 1.0);

} // namespace eforce::bichromatic
