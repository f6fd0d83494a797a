#include "eforce/relativity.hpp"

#include <cmath>
#include <stdexcept>

namespace eforce::relativity {

void Boost::validate() const {
    if (!std::isfinite(u) || !std::isfinite(c)) {
        throw std::invalid_argument("boost: u and c must be finite");
    }
    if (c <= 0.0) {
        throw std::invalid_argument("boost: c must be positive");
    }
    if (std::abs(u) >= c) {
        throw std::invalid_argument("boost: |u| must be below c");
    }
}

double gamma(const Boost& boost) {
    boost.validate();
    const double beta = boost.u / boost.c;
    return 1.0 / std::sqrt(1.0 - beta * beta);
}

double compose_velocity(double v01, const Boost& boost) {
    boost.validate();
    return (v01 + boost.u) / (1.0 + v01 * boost.u / (boost.c * boost.c));
}

double transform_position(double x01, double ct01, const Boost& boost) {
    return gamma(boost) * (x01 + ct01 * boost.u / boost.c);
}

double transform_time(double x01, double ct01, const Boost& boost) {
    return gamma(boost) * (ct01 + x01 * boost.u / boost.c);
}

double transform_existence(double e01, double e12, double v01, const Boost& boost) {
    const double g = gamma(boost);
    const double bracket = 1.0 + v01 * boost.u / (boost.c * boost.c);
    return g * g * bracket * (e01 + e12);
}

FrameState transform_state(const FrameState& state, double e12, const Boost& boost) {
    FrameState out;
    out.v = compose_velocity(state.v, boost);
    out.x = transform_position(state.x, state.ct, boost);
    out.ct = transform_time(state.x, state.ct, boost);
    out.e = transform_existence(state.e, e12, state.v, boost);
    return out;
}

namespace {

// One transform channel evaluated at a single boost, reduced to the
// multiplicative factor R = output / additive_base = gamma^a * bracket^b.
struct ChannelSample {
    double log_ratio = 0.0;
    bool ok = false;  // base nonzero and ratio positive
};

ChannelSample sample(double output, double base) {
    ChannelSample s;
    if (std::abs(base) < 1e-300) return s;
    const double r = output / base;
    if (!(r > 0.0) || !std::isfinite(r)) return s;
    s.log_ratio = std::log(r);
    s.ok = true;
    return s;
}

PowerPattern::Channel fit(const ChannelSample& s1, const ChannelSample& s2,
                          double lg1, double lb1, double lg2, double lb2,
                          bool gamma_obs, bool bracket_obs) {
    PowerPattern::Channel ch;
    if (!s1.ok || !s2.ok || !gamma_obs) return ch;
    if (bracket_obs) {
        const double det = lg1 * lb2 - lb1 * lg2;
        const double scale = std::abs(lg1 * lb2) + std::abs(lb1 * lg2);
        if (std::abs(det) <= 1e-13 * scale + 1e-300) return ch;
        ch.gamma_exponent = (s1.log_ratio * lb2 - lb1 * s2.log_ratio) / det;
        ch.bracket_exponent = (lg1 * s2.log_ratio - s1.log_ratio * lg2) / det;
    } else {
        // bracket term is identically 1; only the gamma exponent is fitted
        ch.gamma_exponent = s1.log_ratio / lg1;
    }
    ch.observable = true;
    return ch;
}

} // namespace

PowerPattern power_pattern_check(const Boost& boost, double v01) {
    boost.validate();
    PowerPattern pat;
    pat.gamma_observable = boost.u != 0.0;
    pat.bracket_observable = boost.u != 0.0 && v01 != 0.0;
    if (!pat.gamma_observable) return pat;

    // fixed probe state; bases stay nonzero for generic boosts
    const double x01 = 0.3, ct01 = 1.7, e01 = 0.9, e12 = 0.4;

    const Boost b1 = boost;
    const Boost b2{boost.u / 2.0, boost.c};
    const double c2 = boost.c * boost.c;

    const double lg1 = std::log(gamma(b1));
    const double lg2 = std::log(gamma(b2));
    const double lb1 = std::log(1.0 + v01 * b1.u / c2);
    const double lb2 = std::log(1.0 + v01 * b2.u / c2);

    auto fit_pair = [&](double out1, double base1, double out2, double base2) {
        return fit(sample(out1, base1), sample(out2, base2),
                   lg1, lb1, lg2, lb2, pat.gamma_observable, pat.bracket_observable);
    };

    pat.velocity = fit_pair(compose_velocity(v01, b1), v01 + b1.u,
                            compose_velocity(v01, b2), v01 + b2.u);
    pat.position = fit_pair(transform_position(x01, ct01, b1), x01 + ct01 * b1.u / b1.c,
                            transform_position(x01, ct01, b2), x01 + ct01 * b2.u / b2.c);
    pat.time = fit_pair(transform_time(x01, ct01, b1), ct01 + x01 * b1.u / b1.c,
                        transform_time(x01, ct01, b2), ct01 + x01 * b2.u / b2.c);
    pat.existence = fit_pair(transform_existence(e01, e12, v01, b1), e01 + e12,
                             transform_existence(e01, e12, v01, b2), e01 + e12);
    return pat;
}

} // namespace eforce::relativity
