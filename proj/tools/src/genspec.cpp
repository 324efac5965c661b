#include "genspec.hpp"

#include <cstdio>
#include <stdexcept>

#include "embolic/errors.hpp"

namespace embolic {

namespace {

long long parse_int(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("generator: bad integer '" + text + "' in spec '" + spec + "'");
  }
}

double parse_real(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("generator: bad number '" + text + "' in spec '" + spec + "'");
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep, std::size_t max_parts) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (parts.size() + 1 < max_parts) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) break;
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  parts.push_back(s.substr(pos));
  return parts;
}

}  // namespace

GeneratedSpace make_generator(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw ValidationError("generator: spec '" + spec +
                          "' needs the form name:params (circle:M, sphere2:M, "
                          "flat-torus:A,B,M1,M2, union:C,SEP,BASE)");
  const std::string name = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);

  if (name == "circle") {
    const long long m = parse_int(rest, spec);
    return {circle_space(static_cast<int>(m)), {1, 1}, "circle:" + std::to_string(m)};
  }
  if (name == "sphere2") {
    const long long m = parse_int(rest, spec);
    return {sphere2_space(static_cast<int>(m)), {1, 0, 1}, "sphere2:" + std::to_string(m)};
  }
  if (name == "flat-torus") {
    const std::vector<std::string> parts = split(rest, ',', 4);
    if (parts.size() != 4)
      throw ValidationError("generator: flat-torus needs A,B,M1,M2 in spec '" + spec + "'");
    const double a = parse_real(parts[0], spec);
    const double b = parse_real(parts[1], spec);
    const long long m1 = parse_int(parts[2], spec);
    const long long m2 = parse_int(parts[3], spec);
    return {flat_torus_space(a, b, static_cast<int>(m1), static_cast<int>(m2)),
            {1, 2, 1},
            "flat-torus:" + format_real(a) + "," + format_real(b) + "," + std::to_string(m1) +
                "," + std::to_string(m2)};
  }
  if (name == "union") {
    const std::vector<std::string> parts = split(rest, ',', 3);
    if (parts.size() != 3)
      throw ValidationError("generator: union needs C,SEP,BASE in spec '" + spec + "'");
    const long long copies = parse_int(parts[0], spec);
    const double sep = parse_real(parts[1], spec);
    if (copies < 1) throw ValidationError("generator: union copy count must be >= 1");
    if (parts[2].rfind("union:", 0) == 0)
      throw ValidationError("generator: nested unions are not supported");
    GeneratedSpace base = make_generator(parts[2]);

    std::vector<MetricMeasureSpace> pieces(static_cast<std::size_t>(copies), base.space);
    std::vector<long long> betti = base.betti;
    for (long long& v : betti) v *= copies;
    return {disjoint_union(pieces, sep), std::move(betti),
            "union:" + std::to_string(copies) + "," + format_real(sep) + "," + base.canonical};
  }
  throw ValidationError("generator: unknown name '" + name +
                        "' (expected circle, sphere2, flat-torus or union)");
}

}  // namespace embolic
