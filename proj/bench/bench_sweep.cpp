// Timing harness for the velocity sweep: parallel kernel vs the serial
// reference, plus a bitwise equality check of their outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "eforce/bichromatic.hpp"
#include "eforce/numerics.hpp"

using namespace eforce::bichromatic;

namespace {

double time_once(const char* label, ForceCurve (*run)(const AtomParams&, const FieldParams&,
                                                      const SweepConfig&, double),
                 const AtomParams& atom, const FieldParams& field, const SweepConfig& cfg,
                 ForceCurve& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = run(atom, field, cfg, 1.0);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-10s %8.3f s  (%zu points)\n", label, s, out.points.size());
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    const int steps = argc > 1 ? std::atoi(argv[1]) : 61;

    AtomParams atom;
    FieldParams field;
    field.omega_r = pi_pulse_rabi(field.delta);
    SweepConfig cfg;
    cfg.velocities = eforce::numerics::linspace(-15.0, 15.0, static_cast<std::size_t>(steps));
    cfg.transient_periods = 10;
    cfg.averaging_periods = 40;

    std::printf("sweep benchmark: delta = %g, rabi = %g, %d velocities, %d + %d beat periods\n",
                field.delta, field.omega_r, steps, cfg.transient_periods, cfg.averaging_periods);

    ForceCurve serial, parallel;
    const double ts = time_once("serial", sweep_serial, atom, field, cfg, serial);
    const double tp = time_once("parallel", sweep, atom, field, cfg, parallel);

    bool identical = serial.points.size() == parallel.points.size();
    for (std::size_t i = 0; identical && i < serial.points.size(); ++i) {
        identical = serial.points[i].v == parallel.points[i].v &&
                    serial.points[i].f_mean == parallel.points[i].f_mean &&
                    serial.points[i].f_spread == parallel.points[i].f_spread;
    }
    std::printf("speedup    %8.2fx\n", ts / tp);
    std::printf("outputs    %s\n", identical ? "bitwise identical" : "DIFFER");
    return identical ? 0 : 1;
}
