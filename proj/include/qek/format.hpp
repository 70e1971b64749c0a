#pragma once

#include <string>

namespace qek {

/// Shortest text that still round-trips a double exactly: 17 significant
/// digits via "%.17g". Used for all machine-diffable output.
std::string format_float17(double v);

}  // namespace qek
