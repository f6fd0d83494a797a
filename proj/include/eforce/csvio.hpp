#pragma once

#include <iosfwd>
#include <string>

#include "eforce/bichromatic.hpp"

namespace eforce::csvio {

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string fmt17(double x);

/// Force curve CSV: `#`-prefixed parameter echo, `v,F_mean,F_spread` header,
/// one row per point. cmd, when nonempty, is echoed verbatim as the first
/// comment line; byte-identical output for identical curve + cmd.
void write_force_curve(std::ostream& os, const bichromatic::ForceCurve& curve,
                       const std::string& cmd = {});

/// Inverse of write_force_curve. Comment lines of the form `# key = value`
/// repopulate the atom/field/meta parameters when the keys are recognized;
/// unknown keys are ignored. The spread column is optional (defaults to 0).
bichromatic::ForceCurve read_force_curve(std::istream& is);

} // namespace eforce::csvio
