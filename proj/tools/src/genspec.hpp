#pragma once

#include <string>
#include <vector>

#include "embolic/space.hpp"

namespace embolic {

/// A generated space together with its ground-truth Betti numbers and the
/// canonical generator spec string (what the report records as the input).
struct GeneratedSpace {
  MetricMeasureSpace space;
  std::vector<long long> betti;
  std::string canonical;
};

/// Parses and instantiates a generator spec:
///   circle:M | sphere2:M | flat-torus:A,B,M1,M2 | union:C,SEP,BASE
/// where BASE is any non-union spec. Ground truths: circle (1,1),
/// sphere2 (1,0,1), flat-torus (1,2,1), union = C x base componentwise.
/// Malformed specs and bad parameters throw ValidationError.
GeneratedSpace make_generator(const std::string& spec);

}  // namespace embolic
