#pragma once

#include <string>
#include <vector>

#include "embolic/space.hpp"

namespace embolic {

/// Writes the ground-truth sidecar for a generated space:
/// {"generator", "m", "n", "inj", "vol", "betti"} as JSON.
void write_meta(const std::string& path, const std::string& generator,
                const MetricMeasureSpace& space, const std::vector<long long>& betti);

/// Betti truth from either an inline comma list ("1,0,1") or a sidecar
/// metadata file (anything that is not purely digits and commas is treated
/// as a path). Throws ValidationError on malformed input.
std::vector<long long> read_truth(const std::string& arg);

/// The sidecar path for an output file: the extension is replaced by
/// ".meta" ("c.space" -> "c.meta"); a bare name gets ".meta" appended.
std::string meta_path_for(const std::string& out_path);

}  // namespace embolic
