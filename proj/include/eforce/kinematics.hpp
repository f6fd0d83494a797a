#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace eforce::kinematics {

/// Uniform time grid: t_i = t0 + i*dt for i in [0, n).
struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 2;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double span() const { return static_cast<double>(n - 1) * dt; }
    void validate() const;
    bool operator==(const TimeGrid&) const = default;
};

/// Uniformly sampled position x(t).
struct Trajectory {
    TimeGrid grid;
    std::vector<double> x;

    void validate() const;
};

/// Accumulated existence e(t) = e0 + integral of x dt, sampled on the same
/// grid as the trajectory it came from.
struct ExistenceSeries {
    TimeGrid grid;
    std::vector<double> e;
    double e0 = 0.0;

    void validate() const;
};

/// Harmonic oscillator x(t) = x0*cos(omega*t + phi). The spring constant
/// m*omega^2 is always derived, never stored.
struct OscillatorParams {
    double m = 1.0;
    double omega = 1.0;
    double x0 = 1.0;
    double phi = 0.0;

    double spring_constant() const { return m * omega * omega; }
    double period() const;
    void validate() const;
};

/// Cumulative quadrature of the trajectory: e(t_i) = e0 + integral of x over
/// [t0, t_i]. Composite Simpson on even prefixes, trapezoid closure on odd
/// ones.
ExistenceSeries integrate_existence(const Trajectory& traj, double e0);

/// |e_i - e0|: the accumulated change of existence at sample i.
double experience(const ExistenceSeries& series, std::size_t i);

/// Analytic oscillator solution on a grid: x = x0*cos(wt+phi) together with
/// its existence e = (x0/w)*sin(wt+phi), which equals -xdot/w^2.
std::pair<Trajectory, ExistenceSeries> shm_trajectory(const OscillatorParams& params,
                                                      const TimeGrid& grid);

} // namespace eforce::kinematics
