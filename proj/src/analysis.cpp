#include "eforce/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eforce/quantize.hpp"

namespace eforce::analysis {

namespace {

// Vertex of the parabola through three points, clamped to [x1, x3]. Falls
// back to the middle sample when the curvature vanishes or opens upward.
void refine_vertex(double x1, double y1, double x2, double y2, double x3, double y3,
                   double& xv, double& yv) {
    xv = x2;
    yv = y2;
    const double d1 = (y2 - y1) / (x2 - x1);
    const double d2 = (y3 - y2) / (x3 - x2);
    const double a = (d2 - d1) / (x3 - x1);
    const double scale = (std::abs(y1) + std::abs(y2) + std::abs(y3)) /
                         ((x3 - x1) * (x3 - x1));
    if (!(a < -1e-12 * scale)) return;
    double x = 0.5 * (x1 + x2) - d1 / (2.0 * a);
    x = std::clamp(x, x1, x3);
    xv = x;
    yv = y1 + d1 * (x - x1) + a * (x - x1) * (x - x2);
}

// Topographic prominence of the strict maximum at index i: on each side,
// walk to the nearest sample exceeding g[i] (or the curve end), take the
// minimum over the walk, and measure from the higher of the two minima.
double prominence_at(const std::vector<double>& g, std::size_t i) {
    double left_min = g[i];
    for (std::size_t j = i; j-- > 0;) {
        if (g[j] > g[i]) break;
        left_min = std::min(left_min, g[j]);
    }
    double right_min = g[i];
    for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[j] > g[i]) break;
        right_min = std::min(right_min, g[j]);
    }
    return g[i] - std::max(left_min, right_min);
}

long round_half_even(double q) {
    const double fl = std::floor(q);
    const double frac = q - fl;
    const long lo = static_cast<long>(fl);
    if (frac > 0.5) return lo + 1;
    if (frac < 0.5) return lo;
    return lo % 2 == 0 ? lo : lo + 1;
}

} // namespace

std::vector<PeakRecord> detect_peaks(const ForceCurve& curve, double min_prominence) {
    curve.validate();
    if (!(min_prominence > 0.0)) {
        throw std::invalid_argument("detect_peaks: min_prominence must be positive");
    }
    const std::size_t n = curve.points.size();
    if (n < 3) throw std::invalid_argument("detect_peaks: need at least 3 samples");

    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(curve.points[i].f_mean);

    std::vector<PeakRecord> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(mag[i] > mag[i - 1] && mag[i] > mag[i + 1])) continue;
        const double prom = prominence_at(mag, i);
        if (prom < min_prominence) continue;
        double xv, yv;
        refine_vertex(curve.points[i - 1].v, mag[i - 1],
                      curve.points[i].v, mag[i],
                      curve.points[i + 1].v, mag[i + 1], xv, yv);
        PeakRecord rec;
        rec.v_peak = xv;
        rec.f_peak = curve.points[i].f_mean < 0.0 ? -yv : yv;
        rec.prominence = prom;
        peaks.push_back(rec);
    }
    return peaks;
}

std::vector<FitRecord> quantize_fit(const std::vector<double>& values, double unit) {
    if (!(unit > 0.0) || !std::isfinite(unit)) {
        throw std::invalid_argument("quantize_fit: unit must be positive");
    }
    std::vector<FitRecord> out;
    out.reserve(values.size());
    for (double value : values) {
        if (!std::isfinite(value)) throw std::invalid_argument("quantize_fit: non-finite value");
        const double q = std::abs(value) / unit;
        long n = q > 0.0 ? std::max(1L, round_half_even(q)) : 0L;
        out.push_back(FitRecord{value, n, std::abs(q - static_cast<double>(n))});
    }
    return out;
}

double velocity_condition(long n, double omega_r, double k_wave) {
    if (n < 1) throw std::invalid_argument("velocity_condition: n must be >= 1");
    if (omega_r < 0.0) throw std::invalid_argument("velocity_condition: omega_r must be >= 0");
    if (!(k_wave > 0.0)) throw std::invalid_argument("velocity_condition: k_wave must be positive");
    return omega_r / (static_cast<double>(n) * k_wave);
}

PowerCheck power_bound_check(double f, double v, double omega_r, double gamma_nl, double hbar) {
    if (omega_r < 0.0 || !(gamma_nl > 0.0) || !(hbar > 0.0)) {
        throw std::invalid_argument("power_bound_check: bad parameters");
    }
    PowerCheck c;
    c.power = f * v;
    c.bound = 0.5 * hbar * omega_r * gamma_nl;
    c.satisfied = c.power <= c.bound * (1.0 + 1e-9);
    return c;
}

QuantizationReport build_report(const ForceCurve& curve, const AtomParams& atom,
                                const FieldParams& field, double min_prominence,
                                double unit, double hbar) {
    atom.validate();
    field.validate();
    if (!std::isfinite(unit)) throw std::invalid_argument("build_report: unit must be finite");
    QuantizationReport report;
    report.unit = unit > 0.0 ? unit
                             : quantize::quantum_force(
                                   quantize::QuantumForceSpec{1, atom.k(), 0.5 * atom.gamma_nl},
                                   hbar);
    report.peaks = detect_peaks(curve, min_prominence);

    std::vector<double> magnitudes;
    magnitudes.reserve(report.peaks.size());
    for (const PeakRecord& p : report.peaks) magnitudes.push_back(std::abs(p.f_peak));
    const std::vector<FitRecord> fits = quantize_fit(magnitudes, report.unit);

    for (std::size_t i = 0; i < report.peaks.size(); ++i) {
        PeakRecord& p = report.peaks[i];
        p.n_nearest = fits[i].n;
        p.residual = fits[i].residual;

        VelocityFit vf;
        vf.n = fits[i].n;
        vf.v_peak = p.v_peak;
        if (fits[i].n >= 1) {
            vf.v_expected = velocity_condition(fits[i].n, field.omega_r, atom.k());
            vf.mismatch = vf.v_expected > 0.0
                              ? std::abs(std::abs(p.v_peak) - vf.v_expected) / vf.v_expected
                              : std::numeric_limits<double>::quiet_NaN();
        } else {
            vf.v_expected = 0.0;
            vf.mismatch = std::numeric_limits<double>::quiet_NaN();
        }
        report.velocity_fits.push_back(vf);

        report.power_checks.push_back(power_bound_check(
            std::abs(p.f_peak), std::abs(p.v_peak), field.omega_r, atom.gamma_nl, hbar));
    }
    return report;
}

} // namespace eforce::analysis
