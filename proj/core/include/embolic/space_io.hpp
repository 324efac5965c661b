#pragma once

#include <string>

#include "embolic/space.hpp"

namespace embolic {

/// Space file formats.
///
/// Text: line 1 "m n inj"; line 2: m weights; then m lines of full
/// distance-matrix rows, space-separated decimal. Reals are written with 17
/// significant digits so a write/read round trip is value-exact.
///
/// Binary (for large m): magic bytes "EMB1", then little-endian u64 m,
/// u64 n, f64 inj, f64 weight[m], f64 dist[m*m] row-major.
///
/// read_space sniffs the magic bytes and accepts either format. All reader
/// errors are ValidationError with "path:line:" context where applicable.
MetricMeasureSpace read_space(const std::string& path);
void write_space_text(const MetricMeasureSpace& space, const std::string& path);
void write_space_binary(const MetricMeasureSpace& space, const std::string& path);

}  // namespace embolic
