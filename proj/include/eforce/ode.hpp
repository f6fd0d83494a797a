#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "eforce/errors.hpp"

namespace eforce::ode {

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    double last_h = 0.0;
};

/// Adaptive Dormand-Prince 5(4) integrator over a fixed-size state.
/// Deterministic: step selection depends only on the inputs, never on
/// wall-clock or thread context.
template <std::size_t N>
class DormandPrince {
public:
    using State = std::array<double, N>;

    double rtol = 1e-8;
    double atol = 1e-10;
    std::int64_t max_steps = 2'000'000;

    /// Advance y from t0 to t1 (t1 > t0), clamping the final step to land on
    /// t1 exactly. h_carry persists the step size across segments; pass 0 on
    /// the first call.
    template <typename Rhs>
    void integrate(Rhs&& rhs, State& y, double t0, double t1, double& h_carry, StepStats* stats = nullptr) {
        integrate_observed(rhs, y, t0, t1, h_carry, stats, [](double, const State&) {});
    }

    /// integrate() plus a callback obs(t, y) after every accepted step.
    template <typename Rhs, typename Obs>
    void integrate_observed(Rhs&& rhs, State& y, double t0, double t1, double& h_carry,
                            StepStats* stats, Obs&& obs) {
        const double span = t1 - t0;
        if (!(span > 0.0)) return;
        double h = h_carry > 0.0 ? std::min(h_carry, span) : span / 200.0;
        const double h_min = span * 1e-14;
        double t = t0;
        State k1, k2, k3, k4, k5, k6, k7, ytmp, y5, y4;
        std::int64_t steps = 0;

        while (t < t1) {
            if (++steps > max_steps) fail("step budget exhausted", t, h, steps);
            if (h < h_min) fail("step size underflow", t, h, steps);
            const bool last = t + h >= t1;
            if (last) h = t1 - t;

            rhs(t, y, k1);
            stage1(y, ytmp, h, k1);
            rhs(t + c2 * h, ytmp, k2);
            stage2(y, ytmp, h, k1, k2);
            rhs(t + c3 * h, ytmp, k3);
            stage3(y, ytmp, h, k1, k2, k3);
            rhs(t + c4 * h, ytmp, k4);
            stage4(y, ytmp, h, k1, k2, k3, k4);
            rhs(t + c5 * h, ytmp, k5);
            stage5(y, ytmp, h, k1, k2, k3, k4, k5);
            rhs(t + h, ytmp, k6);
            for (std::size_t i = 0; i < N; ++i)
                y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            rhs(t + h, y5, k7);
            for (std::size_t i = 0; i < N; ++i)
                y4[i] = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double e = (y5[i] - y4[i]) / scale;
                err += e * e;
            }
            err = std::sqrt(err / static_cast<double>(N));
            if (!std::isfinite(err)) fail("non-finite step error", t, h, steps);

            if (err <= 1.0) {
                t = last ? t1 : t + h;
                y = y5;
                if (stats) ++stats->accepted;
                obs(t, y);
            } else if (stats) {
                ++stats->rejected;
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
            h = std::min(h * fac, span);
            if (stats) stats->last_h = h;
        }
        h_carry = h;
    }

private:
    // Dormand-Prince coefficients.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double d1 = 5179.0 / 57600, d3 = 7571.0 / 16695, d4 = 393.0 / 640,
                            d5 = -92097.0 / 339200, d6 = 187.0 / 2100, d7 = 1.0 / 40;

    static void stage1(const State& y, State& out, double h, const State& k1) {
        for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * a21 * k1[i];
    }
    static void stage2(const State& y, State& out, double h, const State& k1, const State& k2) {
        for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    }
    static void stage3(const State& y, State& out, double h, const State& k1, const State& k2,
                       const State& k3) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    }
    static void stage4(const State& y, State& out, double h, const State& k1, const State& k2,
                       const State& k3, const State& k4) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    static void stage5(const State& y, State& out, double h, const State& k1, const State& k2,
                       const State& k3, const State& k4, const State& k5) {
        for (std::size_t i = 0; i < N; ++i)
            out[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }

    [[noreturn]] static void fail(const char* why, double t, double h, std::int64_t steps) {
        std::ostringstream os;
        os << "ode: " << why << " (t=" << t << ", h=" << h << ", steps=" << steps << ")";
        throw NumericError(os.str());
    }
};

} // namespace eforce::ode
