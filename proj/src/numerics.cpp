#include "eforce/numerics.hpp"

#include <stdexcept>

namespace eforce::numerics {

std::vector<double> cumulative_quadrature(std::span<const double> y, double dt) {
    if (y.size() < 2) throw std::invalid_argument("cumulative_quadrature: need at least 2 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("cumulative_quadrature: dt must be positive");

    std::vector<double> acc(y.size(), 0.0);
    // Running Simpson sum over even prefixes; odd prefixes close with one
    // trapezoid on the final interval.
    double simpson = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (i % 2 == 0) {
            simpson += dt / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
            acc[i] = simpson;
        } else {
            acc[i] = simpson + 0.5 * dt * (y[i - 1] + y[i]);
        }
    }
    return acc;
}

double integrate_samples(std::span<const double> y, double dt) {
    if (y.size() < 2) throw std::invalid_argument("integrate_samples: need at least 2 samples");
    double simpson = 0.0;
    std::size_t i = 2;
    for (; i < y.size(); i += 2)
        simpson += dt / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
    if (y.size() % 2 == 0)  // odd interval count, trapezoid closure
        simpson += 0.5 * dt * (y[y.size() - 2] + y[y.size() - 1]);
    return simpson;
}

std::vector<double> derivative_samples(std::span<const double> y, double dt) {
    const std::size_t n = y.size();
    if (n < 4) throw std::invalid_argument("derivative_samples: need at least 4 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("derivative_samples: dt must be positive");

    std::vector<double> d(n);
    d[0] = (-11.0 * y[0] + 18.0 * y[1] - 9.0 * y[2] + 2.0 * y[3]) / (6.0 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
    d[n - 1] = (11.0 * y[n - 1] - 18.0 * y[n - 2] + 9.0 * y[n - 3] - 2.0 * y[n - 4]) / (6.0 * dt);
    return d;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
    if (!(b > a)) throw std::invalid_argument("linspace: b must exceed a");
    std::vector<double> v(n);
    const double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + step * static_cast<double>(i);
    v.back() = b;
    return v;
}

MeanStd mean_std(std::span<const double> y) {
    MeanStd r;
    if (y.empty()) return r;
    double s = 0.0;
    for (double v : y) s += v;
    r.mean = s / static_cast<double>(y.size());
    double q = 0.0;
    for (double v : y) q += (v - r.mean) * (v - r.mean);
    r.std_dev = std::sqrt(q / static_cast<double>(y.size()));
    return r;
}

} // namespace eforce::numerics
