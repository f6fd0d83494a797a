#include "eforce/canonical.hpp"

#include <cmath>
#include <stdexcept>

#include "eforce/errors.hpp"
#include "eforce/numerics.hpp"

namespace eforce::canonical {

void ChartMap::validate() const {
    params.validate();
    if (params.omega <= 0.0) {
        throw std::invalid_argument("chart map: omega must be positive");
    }
}

PhaseSpacePoint ChartMap::to_ef(const PhaseSpacePoint& xp) const {
    validate();
    if (xp.chart != Chart::XP) throw std::invalid_argument("to_ef: expected XP point");
    const double mw2 = params.m * params.omega * params.omega;
    return PhaseSpacePoint{Chart::EF, -xp.p / mw2, -mw2 * xp.q};
}

PhaseSpacePoint ChartMap::to_xp(const PhaseSpacePoint& ef) const {
    validate();
    if (ef.chart != Chart::EF) throw std::invalid_argument("to_xp: expected EF point");
    const double mw2 = params.m * params.omega * params.omega;
    return PhaseSpacePoint{Chart::XP, -ef.p / mw2, -mw2 * ef.q};
}

double lagrangian_ex(double e, double x, const OscillatorParams& params) {
    const double w2 = params.omega * params.omega;
    return 0.5 * params.m * w2 * (w2 * e * e - x * x);
}

double conjugate_momentum(double x, const OscillatorParams& params) {
    return -params.m * params.omega * params.omega * x;
}

double generalized_force(double e, const OscillatorParams& params) {
    const double w2 = params.omega * params.omega;
    return params.m * w2 * w2 * e;
}

double hamiltonian_ef(double e, double F, const OscillatorParams& params) {
    const double mw2 = params.m * params.omega * params.omega;
    const double w2 = params.omega * params.omega;
    return -F * F / (2.0 * mw2) - 0.5 * params.m * w2 * w2 * e * e;
}

namespace {

void check_shared_grid(const Trajectory& traj, const ExistenceSeries& series) {
    traj.validate();
    series.validate();
    if (!(traj.grid == series.grid)) {
        throw std::invalid_argument("trajectory and existence series use different grids");
    }
}

} // namespace

std::vector<double> euler_lagrange_residual(const Trajectory& traj,
                                            const ExistenceSeries& series,
                                            const OscillatorParams& params) {
    check_shared_grid(traj, series);
    params.validate();
    const std::size_t n = traj.x.size();
    std::vector<double> pe(n);
    for (std::size_t i = 0; i < n; ++i) pe[i] = conjugate_momentum(traj.x[i], params);
    std::vector<double> dpe = numerics::derivative_samples(pe, traj.grid.dt);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = dpe[i] - generalized_force(series.e[i], params);
    return r;
}

HamiltonResidualSeries hamilton_residual(const Trajectory& traj,
                                         const ExistenceSeries& series,
                                         const OscillatorParams& params) {
    check_shared_grid(traj, series);
    params.validate();
    const double mw2 = params.m * params.omega * params.omega;
    const std::size_t n = traj.x.size();
    std::vector<double> F(n);
    for (std::size_t i = 0; i < n; ++i) F[i] = conjugate_momentum(traj.x[i], params);
    const std::vector<double> de = numerics::derivative_samples(series.e, traj.grid.dt);
    const std::vector<double> dF = numerics::derivative_samples(F, traj.grid.dt);
    HamiltonResidualSeries out;
    out.r_e.resize(n);
    out.r_F.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.r_e[i] = de[i] - (-F[i] / mw2);
        out.r_F[i] = dF[i] + (-generalized_force(series.e[i], params));
    }
    return out;
}

double poisson_bracket(const ScalarField& a, const ScalarField& b,
                       const PhaseSpacePoint& pt) {
    if (!a.eval || !b.eval) throw std::invalid_argument("poisson_bracket: empty evaluator");
    if (a.h_base <= 0.0 || b.h_base <= 0.0) {
        throw std::invalid_argument("poisson_bracket: h_base must be positive");
    }

    auto partials = [&pt](const ScalarField& f, double& fq, double& fp) {
        const double hq = std::max(f.h_base, f.h_base * std::abs(pt.q));
        const double hp = std::max(f.h_base, f.h_base * std::abs(pt.p));
        fq = numerics::derivative_central4([&](double q) { return f.eval(q, pt.p); }, pt.q, hq);
        fp = numerics::derivative_central4([&](double p) { return f.eval(pt.q, p); }, pt.p, hp);
    };

    double aq, ap, bq, bp;
    partials(a, aq, ap);
    partials(b, bq, bp);
    if (!std::isfinite(aq) || !std::isfinite(ap) || !std::isfinite(bq) || !std::isfinite(bp)) {
        throw NumericError("poisson_bracket: non-finite partial derivative at (q=" +
                           std::to_string(pt.q) + ", p=" + std::to_string(pt.p) + ")");
    }
    return aq * bp - ap * bq;
}

double dirac_commutator_shm(const OscillatorParams& params, CommutatorOrder order) {
    params.validate();
    if (params.omega <= 0.0) throw std::invalid_argument("dirac commutator: omega must be positive");
    const double mw2 = params.m * params.omega * params.omega;
    // e = alpha*p, F = beta*x with alpha = -1/(m w^2), beta = -m w^2, so
    // [e, F] = alpha*beta*[p, x] and [p, x] carries coefficient -1.
    const double alpha = -1.0 / mw2;
    const double beta = -mw2;
    const double ef = alpha * beta * (-1.0);
    return order == CommutatorOrder::EF ? ef : -ef;
}

} // namespace eforce::canonical
