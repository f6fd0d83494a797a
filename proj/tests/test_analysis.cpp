#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "eforce/analysis.hpp"
#include "eforce/bichromatic.hpp"

using namespace eforce::analysis;
using eforce::bichromatic::AtomParams;
using eforce::bichromatic::CurvePoint;
using eforce::bichromatic::FieldParams;
using eforce::bichromatic::ForceCurve;

namespace {

ForceCurve make_curve(const std::vector<double>& v, const std::vector<double>& f) {
    ForceCurve c;
    for (std::size_t i = 0; i < v.size(); ++i) c.points.push_back(CurvePoint{v[i], f[i], 0.0});
    return c;
}

double gauss(double v, double center, double height, double sigma) {
    const double z = (v - center) / sigma;
    return height * std::exp(-0.5 * z * z);
}

}  // namespace

TEST_CASE("parabolic refinement recovers an exact vertex") {
    auto curve = make_curve({1.0, 1.25, 1.5},
                            {5.0 - 0.09, 5.0 - 0.0025, 5.0 - 0.04});
    const auto peaks = detect_peaks(curve, 0.01);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].v_peak == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(peaks[0].f_peak == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("three gaussian bumps give exactly three peaks") {
    std::vector<double> vs, fs;
    for (double v = 0.0; v <= 5.0 + 1e-9; v += 0.02) {
        vs.push_back(v);
        fs.push_back(gauss(v, 1.0, 1.0, 0.15) + gauss(v, 2.0, 2.0, 0.15) +
                     gauss(v, 4.0, 3.0, 0.15));
    }
    const auto peaks = detect_peaks(make_curve(vs, fs), 0.2);
    REQUIRE(peaks.size() == 3);
    CHECK(peaks[0].v_peak == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(peaks[1].v_peak == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(peaks[2].v_peak == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(peaks[0].f_peak == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(peaks[1].f_peak == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(peaks[2].f_peak == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("monotone data has no peaks") {
    std::vector<double> vs, fs;
    for (double v = 0.0; v <= 3.0; v += 0.1) {
        vs.push_back(v);
        fs.push_back(0.5 * v);
    }
    CHECK(detect_peaks(make_curve(vs, fs), 0.01).empty());
}

TEST_CASE("sub-prominence wiggles are rejected") {
    std::vector<double> vs, fs;
    for (int i = 0; i < 21; ++i) {
        vs.push_back(0.1 * i);
        fs.push_back(1.0);
    }
    fs[10] = 1.05;
    CHECK(detect_peaks(make_curve(vs, fs), 0.1).empty());
    CHECK(detect_peaks(make_curve(vs, fs), 0.01).size() == 1);
}

TEST_CASE("topographic prominence measures from the higher saddle") {
    auto curve = make_curve({0, 1, 2, 3, 4, 5}, {0.2, 1.0, 3.0, 1.0, 2.0, 0.2});
    const auto both = detect_peaks(curve, 0.5);
    REQUIRE(both.size() == 2);
    CHECK(both[0].prominence == doctest::Approx(2.8));
    CHECK(both[1].prominence == doctest::Approx(1.0));
    const auto one = detect_peaks(curve, 1.5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].prominence == doctest::Approx(2.8));
}

TEST_CASE("peaks on negative lobes keep their sign") {
    auto curve = make_curve({0, 1, 2, 3, 4}, {-0.1, -1.0, -3.0, -1.0, -0.1});
    const auto peaks = detect_peaks(curve, 0.5);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].v_peak == doctest::Approx(2.0));
    CHECK(peaks[0].f_peak == doctest::Approx(-3.0));
    CHECK(peaks[0].prominence == doctest::Approx(2.9));
}

TEST_CASE("detection commutes with a uniform rescale") {
    std::vector<double> vs, fs, fs10;
    for (double v = 0.0; v <= 3.0; v += 0.05) {
        vs.push_back(v);
        const double f = gauss(v, 1.0, 1.0, 0.2) + gauss(v, 2.2, 0.6, 0.2);
        fs.push_back(f);
        fs10.push_back(10.0 * f);
    }
    const auto base = detect_peaks(make_curve(vs, fs), 0.1);
    const auto scaled = detect_peaks(make_curve(vs, fs10), 1.0);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(scaled[i].v_peak == doctest::Approx(base[i].v_peak).epsilon(1e-12));
        CHECK(scaled[i].f_peak == doctest::Approx(10.0 * base[i].f_peak).epsilon(1e-12));
    }
}

TEST_CASE("peak detection input validation") {
    auto tiny = make_curve({0, 1}, {0, 1});
    CHECK_THROWS_AS(detect_peaks(tiny, 0.1), std::invalid_argument);
    auto ok = make_curve({0, 1, 2}, {0, 1, 0});
    CHECK_THROWS_AS(detect_peaks(ok, 0.0), std::invalid_argument);
}

TEST_CASE("quantize fit on near-integer multiples") {
    const double unit = 0.7;
    const auto fits = quantize_fit({0.8 * unit, 1.9 * unit, 3.2 * unit}, unit);
    REQUIRE(fits.size() == 3);
    CHECK(fits[0].n == 1);
    CHECK(fits[1].n == 2);
    CHECK(fits[2].n == 3);
    CHECK(fits[0].residual == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(fits[1].residual == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(fits[2].residual == doctest::Approx(0.2).epsilon(1e-12));
    for (const auto& f : fits) CHECK(f.residual <= 0.25);
}

TEST_CASE("quantize fit exactness, zero, sign, and ties") {
    const auto exact = quantize_fit({3.0, -2.0, 0.0}, 1.0);
    CHECK(exact[0].n == 3);
    CHECK(exact[0].residual == 0.0);
    CHECK(exact[1].n == 2);  // magnitude classification
    CHECK(exact[2].n == 0);

    // half-integer ties round to even, but never below one for nonzero input
    const auto ties = quantize_fit({0.5, 1.5, 2.5}, 1.0);
    CHECK(ties[0].n == 1);
    CHECK(ties[0].residual == doctest::Approx(0.5));
    CHECK(ties[1].n == 2);
    CHECK(ties[2].n == 2);

    CHECK_THROWS_AS(quantize_fit({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantize_fit({std::nan("")}, 1.0), std::invalid_argument);
}

TEST_CASE("quantize fit residual is bounded for resolvable values") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> us(0.1, 5.0);
    std::uniform_real_distribution<double> qs(0.5, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double unit = us(rng);
        const double value = qs(rng) * unit;
        const auto fit = quantize_fit({value}, unit);
        CHECK(fit[0].n >= 1);
        CHECK(fit[0].residual <= 0.5 + 1e-12);
    }
}

TEST_CASE("resonance velocities fall off as one over n") {
    const double wr = 20.0;
    double prev = velocity_condition(1, wr, 1.0);
    CHECK(prev == doctest::Approx(20.0));
    for (long n = 2; n <= 6; ++n) {
        const double vn = velocity_condition(n, wr, 1.0);
        CHECK(vn == doctest::Approx(wr / static_cast<double>(n)).epsilon(1e-14));
        CHECK(vn < prev);
        prev = vn;
    }
    CHECK(velocity_condition(3, 2.0 * wr, 1.0) ==
          doctest::Approx(2.0 * velocity_condition(3, wr, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(velocity_condition(0, wr, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(velocity_condition(1, wr, 0.0), std::invalid_argument);
}

TEST_CASE("extracted power respects the drive budget") {
    // n f_unit * wr/(n k) = hbar wr gamma / 2 exactly, independent of n
    const double wr = 12.0;
    const double f_unit = 0.5;
    for (long n = 1; n <= 4; ++n) {
        const double f = static_cast<double>(n) * f_unit;
        const double v = velocity_condition(n, wr, 1.0);
        const PowerCheck c = power_bound_check(f, v, wr, 1.0, 1.0);
        CHECK(c.power == doctest::Approx(c.bound).epsilon(1e-12));
        CHECK(c.satisfied);
    }
    const PowerCheck over = power_bound_check(1.02 * 0.5 * wr, 1.0, wr, 1.0, 1.0);
    CHECK_FALSE(over.satisfied);
    const PowerCheck drag = power_bound_check(-3.0, 5.0, wr, 1.0, 1.0);
    CHECK(drag.satisfied);
    CHECK_THROWS_AS(power_bound_check(1.0, 1.0, -1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("report on a synthetic quantized curve recovers the ladder") {
    AtomParams atom;  // k = 1, gamma = 1
    FieldParams field;
    field.omega_r = 20.0;
    const double f_unit = 0.5;  // default unit for this atom

    std::vector<double> vs, fs;
    for (double v = 3.0; v <= 23.0 + 1e-9; v += 0.05) {
        double f = 0.0;
        for (long n = 1; n <= 4; ++n) {
            const double vn = field.omega_r / static_cast<double>(n);
            f += gauss(v, vn, static_cast<double>(n) * f_unit, 0.25);
        }
        vs.push_back(v);
        fs.push_back(f);
    }
    ForceCurve curve = make_curve(vs, fs);
    curve.field = field;

    const QuantizationReport report = build_report(curve, atom, field, 0.1);
    CHECK(report.unit == doctest::Approx(f_unit).epsilon(1e-14));
    REQUIRE(report.peaks.size() == 4);
    REQUIRE(report.velocity_fits.size() == 4);
    REQUIRE(report.power_checks.size() == 4);

    // peaks arrive in velocity order: n = 4, 3, 2, 1
    for (std::size_t i = 0; i < 4; ++i) {
        const long n = static_cast<long>(4 - i);
        CHECK(report.peaks[i].n_nearest == n);
        CHECK(report.peaks[i].residual < 0.05);
        CHECK(report.velocity_fits[i].n == n);
        CHECK(report.velocity_fits[i].mismatch < 0.02);
        CHECK(report.power_checks[i].satisfied);
    }
}

TEST_CASE("report honors an explicit unit override") {
    auto curve = make_curve({0, 1, 2, 3, 4}, {0.1, 0.5, 2.1, 0.5, 0.1});
    curve.field.omega_r = 5.0;
    const QuantizationReport rep =
        build_report(curve, curve.atom, curve.field, 0.2, 0.7);
    CHECK(rep.unit == 0.7);
    REQUIRE(rep.peaks.size() == 1);
    CHECK(rep.peaks[0].n_nearest == 3);
    CHECK_THROWS_AS(build_report(curve, curve.atom, curve.field, 0.2,
                                 std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}
