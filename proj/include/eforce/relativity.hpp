#pragma once

namespace eforce::relativity {

/// Collinear boost: frame 1 moves with velocity u relative to frame 2.
/// Velocities may be expressed in units of c (the default c = 1).
struct Boost {
    double u = 0.0;
    double c = 1.0;

    void validate() const;
};

/// Kinematic state of an object relative to one named frame.
struct FrameState {
    double v = 0.0;   // object velocity
    double x = 0.0;   // position
    double ct = 0.0;  // scaled coordinate time
    double e = 0.0;   // existence
};

/// Lorentz factor (1 - u^2/c^2)^(-1/2). Equals 1 iff u = 0.
double gamma(const Boost& boost);

/// Relativistic velocity addition (v01 + u) / (1 + v01*u/c^2).
double compose_velocity(double v01, const Boost& boost);

/// gamma * (x01 + ct01 * u/c).
double transform_position(double x01, double ct01, const Boost& boost);

/// gamma * (ct01 + x01 * u/c).
double transform_time(double x01, double ct01, const Boost& boost);

/// gamma^2 * (1 + v01*u/c^2) * (e01 + e12). e12 is the existence the moving
/// frame itself accumulates, supplied by the caller; for frame 1's origin in
/// uniform relative motion over frame-1 time t it is u*t^2/2.
double transform_existence(double e01, double e12, double v01, const Boost& boost);

/// All four channels applied to one state.
FrameState transform_state(const FrameState& state, double e12, const Boost& boost);

/// Fitted structural exponents of the four transform channels, obtained by a
/// log-ratio fit over two boosts (u and u/2). Each channel output has the
/// form gamma^a * (1 + v*u/c^2)^b * (Galilean sum); in exact arithmetic the
/// gamma exponents are (0,1,1,2) and the bracket exponents (-1,0,0,1) for the
/// (velocity, position, time, existence) channels.
struct PowerPattern {
    struct Channel {
        double gamma_exponent = 0.0;
        double bracket_exponent = 0.0;
        bool observable = false;  // false when the fit is degenerate (u=0, zero base, ...)
    };
    Channel velocity, position, time, existence;
    bool gamma_observable = false;    // u != 0
    bool bracket_observable = false;  // v01*u != 0
};

PowerPattern power_pattern_check(const Boost& boost, double v01);

} // namespace eforce::relativity
