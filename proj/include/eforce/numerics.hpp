#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace eforce::numerics {

/// Cumulative quadrature of uniformly sampled y against step dt.
/// Prefix with an even interval count is composite Simpson; an odd prefix
/// closes the last interval with a single trapezoid. Error O(dt^4) on the
/// Simpson prefixes, O(dt^3) locally on the trapezoid closure.
std::vector<double> cumulative_quadrature(std::span<const double> y, double dt);

/// Integral of y over the whole sampled range (last entry of the cumulative
/// rule above).
double integrate_samples(std::span<const double> y, double dt);

/// First derivative of a uniformly sampled series, same length as the input.
/// Interior points use the 2nd-order central stencil; the two endpoints use
/// 4-point one-sided stencils (3rd order) so endpoint error never dominates.
std::vector<double> derivative_samples(std::span<const double> y, double dt);

/// 4th-order central first derivative of f at x with step h.
inline double derivative_central4(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline bool all_finite(std::span<const double> y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Population mean and standard deviation.
struct MeanStd {
    double mean = 0.0;
    double std_dev = 0.0;
};
MeanStd mean_std(std::span<const double> y);

/// n evenly spaced values from a to b inclusive; n >= 2.
std::vector<double> linspace(double a, double b, std::size_t n);

} // namespace eforce::numerics
