#pragma once

#include "steiner/rz.hpp"

#include <string>

namespace steiner {

/// JSON run report, schema version 1. All rationals are "p/q" strings;
/// vertex ids are 1-based to match the STP files. Byte-deterministic for a
/// given report.
std::string write_report(const RunReport& report);

}  // namespace steiner
