#pragma once

#include <string>

#include "embolic/bounds.hpp"

namespace embolic {

/// Serializes the report as JSON with a fixed schema: keys exactly the
/// BoundReport field names, in declaration order; reals as decimal with 17
/// significant digits; 2-space indent; trailing newline. The writer is
/// hand-rolled so the byte stream is a pure function of the report contents
/// — reruns and different thread counts produce identical files. Nonfinite
/// reals are an InternalError: no computed quantity may legally be one.
std::string report_to_json(const BoundReport& report);

/// report_to_json to a file (binary mode; no platform newline translation).
void write_report(const BoundReport& report, const std::string& path);

}  // namespace embolic
