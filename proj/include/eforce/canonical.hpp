#pragma once

#include <functional>
#include <vector>

#include "eforce/kinematics.hpp"

namespace eforce::canonical {

using kinematics::ExistenceSeries;
using kinematics::OscillatorParams;
using kinematics::Trajectory;

enum class Chart { XP, EF };

/// One point of a two-coordinate phase space. The chart tag fixes the
/// interpretation: XP is (x, p = m*xdot), EF is (e, F).
struct PhaseSpacePoint {
    Chart chart = Chart::XP;
    double q = 0.0;
    double p = 0.0;
};

/// Linear chart change between (x, p) and (e, F) for one oscillator:
/// e = -p/(m w^2), F = -m w^2 x. Singular at w = 0, rejected by validate().
struct ChartMap {
    OscillatorParams params;

    void validate() const;
    PhaseSpacePoint to_ef(const PhaseSpacePoint& xp) const;
    PhaseSpacePoint to_xp(const PhaseSpacePoint& ef) const;
};

/// Real-valued observable on phase space. h_base scales the finite-difference
/// step used by poisson_bracket: per coordinate h = max(h_base, h_base*|coord|).
struct ScalarField {
    std::function<double(double q, double p)> eval;
    double h_base = 1e-5;
};

/// (1/2) m w^4 e^2 - (1/2) m w^2 x^2
double lagrangian_ex(double e, double x, const OscillatorParams& params);

/// Momentum conjugate to e: -m w^2 x (the classical force).
double conjugate_momentum(double x, const OscillatorParams& params);

/// Force rate conjugate to e: m w^4 e.
double generalized_force(double e, const OscillatorParams& params);

/// Legendre transform of lagrangian_ex: H(e, F) = -F^2/(2 m w^2) - (1/2) m w^4 e^2.
double hamiltonian_ef(double e, double F, const OscillatorParams& params);

/// r_i = D_t[conjugate_momentum(x_i)] - generalized_force(e_i), sampled
/// derivative second order in the interior. Zero on exact orbits up to dt^2.
std::vector<double> euler_lagrange_residual(const Trajectory& traj,
                                            const ExistenceSeries& series,
                                            const OscillatorParams& params);

struct HamiltonResidualSeries {
    std::vector<double> r_e;  // edot - dH/dF
    std::vector<double> r_F;  // Fdot + dH/de
};

HamiltonResidualSeries hamilton_residual(const Trajectory& traj,
                                         const ExistenceSeries& series,
                                         const OscillatorParams& params);

/// {a, b} = da/dq db/dp - da/dp db/dq at pt, fourth order central stencils.
/// Throws NumericError if any evaluation is non-finite.
double poisson_bracket(const ScalarField& a, const ScalarField& b,
                       const PhaseSpacePoint& pt);

enum class CommutatorOrder { EF, FE };

/// Coefficient of i*hbar in the chart-reduced commutator: [e, F] collapses to
/// [p, x] because the chart factors cancel, giving -1; swapped order gives +1.
double dirac_commutator_shm(const OscillatorParams& params,
                            CommutatorOrder order = CommutatorOrder::EF);

} // namespace eforce::canonical
