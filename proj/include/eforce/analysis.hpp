#pragma once

#include <vector>

#include "eforce/bichromatic.hpp"

namespace eforce::analysis {

using bichromatic::AtomParams;
using bichromatic::FieldParams;
using bichromatic::ForceCurve;

/// One detected force peak. f_peak keeps the sign of the underlying force;
/// detection and the integer fit operate on the magnitude.
struct PeakRecord {
    double v_peak = 0.0;
    double f_peak = 0.0;
    long n_nearest = 0;     // filled by the quantization fit
    double residual = 0.0;  // | |f_peak|/unit - n_nearest |, in [0, 0.5]
    double prominence = 0.0;
};

struct FitRecord {
    double value = 0.0;
    long n = 0;
    double residual = 0.0;
};

/// Comparison of a fitted peak against the resonance velocity Wr/(n k).
/// mismatch = | |v_peak| - v_expected | / v_expected (NaN when v_expected = 0).
struct VelocityFit {
    long n = 0;
    double v_expected = 0.0;
    double v_peak = 0.0;
    double mismatch = 0.0;
};

struct PowerCheck {
    double power = 0.0;
    double bound = 0.0;
    bool satisfied = true;
};

struct QuantizationReport {
    double unit = 0.0;  // force quantum the peaks are reduced against
    std::vector<PeakRecord> peaks;
    std::vector<VelocityFit> velocity_fits;
    std::vector<PowerCheck> power_checks;
};

/// Strict local maxima of |F| with topographic prominence >= min_prominence,
/// position and height refined by a parabola through the three samples
/// around the maximum. Throws on curves shorter than 3 points.
std::vector<PeakRecord> detect_peaks(const ForceCurve& curve, double min_prominence);

/// Nearest integer multiple of unit for each magnitude |value|, minimum 1
/// for nonzero values; exact half-integers round to even.
std::vector<FitRecord> quantize_fit(const std::vector<double>& values, double unit);

/// Wr / (n k): resonance velocity of the n-th force multiple.
double velocity_condition(long n, double omega_r, double k_wave);

/// (F*v, hbar*Wr*Gamma/2, F*v <= bound*(1+1e-9)).
PowerCheck power_bound_check(double f, double v, double omega_r, double gamma_nl,
                             double hbar = 1.0);

/// detect_peaks, fit against the force unit (hbar*k*Gamma/2 when unit <= 0),
/// compare peak positions with the resonance velocities, and check the
/// acceleration-power bound. Descriptive only: nothing here asserts the
/// quantization conjecture.
QuantizationReport build_report(const ForceCurve& curve, const AtomParams& atom,
                                const FieldParams& field, double min_prominence,
                                double unit = 0.0, double hbar = 1.0);

} // namespace eforce::analysis
