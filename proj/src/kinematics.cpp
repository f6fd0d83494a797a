#include "eforce/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eforce/numerics.hpp"

namespace eforce::kinematics {

void TimeGrid::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("TimeGrid: dt must be positive and finite");
    if (n < 2) throw std::invalid_argument("TimeGrid: need at least 2 samples");
    if (!std::isfinite(t0)) throw std::invalid_argument("TimeGrid: t0 must be finite");
}

void Trajectory::validate() const {
    grid.validate();
    if (x.size() != grid.n) throw std::invalid_argument("Trajectory: sample count does not match grid");
    if (!numerics::all_finite(x)) throw std::invalid_argument("Trajectory: non-finite sample");
}

void ExistenceSeries::validate() const {
    grid.validate();
    if (e.size() != grid.n) throw std::invalid_argument("ExistenceSeries: sample count does not match grid");
    if (!numerics::all_finite(e)) throw std::invalid_argument("ExistenceSeries: non-finite sample");
    if (e[0] != e0) throw std::invalid_argument("ExistenceSeries: e[0] must equal e0");
}

double OscillatorParams::period() const { return 2.0 * std::numbers::pi / omega; }

void OscillatorParams::validate() const {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("OscillatorParams: m must be positive");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("OscillatorParams: omega must be positive");
    if (!(x0 >= 0.0) || !std::isfinite(x0))
        throw std::invalid_argument("OscillatorParams: x0 must be nonnegative");
    if (!std::isfinite(phi)) throw std::invalid_argument("OscillatorParams: phi must be finite");
}

ExistenceSeries integrate_existence(const Trajectory& traj, double e0) {
    traj.validate();
    if (!std::isfinite(e0)) throw std::invalid_argument("integrate_existence: e0 must be finite");

    ExistenceSeries out;
    out.grid = traj.grid;
    out.e0 = e0;
    out.e = numerics::cumulative_quadrature(traj.x, traj.grid.dt);
    for (double& v : out.e) v += e0;
    out.e[0] = e0;
    return out;
}

double experience(const ExistenceSeries& series, std::size_t i) {
    if (i >= series.e.size()) throw std::out_of_range("experience: sample index out of range");
    return std::abs(series.e[i] - series.e0);
}

std::pair<Trajectory, ExistenceSeries> shm_trajectory(const OscillatorParams& params,
                                                      const TimeGrid& grid) {
    params.validate();
    grid.validate();

    Trajectory traj;
    traj.grid = grid;
    traj.x.resize(grid.n);
    ExistenceSeries series;
    series.grid = grid;
    series.e.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double phase = params.omega * grid.time(i) + params.phi;
        traj.x[i] = params.x0 * std::cos(phase);
        series.e[i] = params.x0 / params.omega * std::sin(phase);
    }
    series.e0 = series.e[0];
    return {std::move(traj), std::move(series)};
}

} // namespace eforce::kinematics
