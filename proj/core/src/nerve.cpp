#include "embolic/nerve.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "embolic/errors.hpp"

namespace embolic {

namespace {

std::string tuple_to_string(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  out += '}';
  return out;
}

}  // namespace

void validate_complex(const SimplicialComplex& complex) {
  if (complex.dmax < 0) throw ValidationError("complex: dmax must be nonnegative");
  if (complex.simplices.size() != static_cast<std::size_t>(complex.dmax) + 1)
    throw ValidationError("complex: simplex storage does not match dmax");
  const int t0 = complex.vertex_count();
  for (int d = 0; d <= complex.dmax; ++d) {
    const auto& level = complex.simplices[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::vector<int>& s = level[i];
      if (static_cast<int>(s.size()) != d + 1) {
        std::ostringstream os;
        os << "complex: simplex " << tuple_to_string(s) << " stored at dimension " << d;
        throw ValidationError(os.str());
      }
      for (std::size_t v = 0; v < s.size(); ++v) {
        if (s[v] < 0 || s[v] >= t0) {
          std::ostringstream os;
          os << "complex: vertex id " << s[v] << " out of range in " << tuple_to_string(s);
          throw ValidationError(os.str());
        }
        if (v > 0 && s[v] <= s[v - 1]) {
          std::ostringstream os;
          os << "complex: vertices not strictly increasing in " << tuple_to_string(s);
          throw ValidationError(os.str());
        }
      }
      if (i > 0 && !(level[i - 1] < s)) {
        std::ostringstream os;
        os << "complex: simplices out of lex order or duplicated at dimension " << d << " near "
           << tuple_to_string(s);
        throw ValidationError(os.str());
      }
    }
  }
  for (int v = 0; v < t0; ++v) {
    if (complex.simplices[0][static_cast<std::size_t>(v)] != std::vector<int>{v})
      throw ValidationError("complex: 0-simplices must be exactly {0}..{t_0 - 1}");
  }
  // Downward closure by explicit face enumeration.
  for (int d = 1; d <= complex.dmax; ++d) {
    const auto& level = complex.simplices[static_cast<std::size_t>(d)];
    const auto& below = complex.simplices[static_cast<std::size_t>(d) - 1];
    for (const std::vector<int>& s : level) {
      std::vector<int> face(s.size() - 1);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t v = 0; v < s.size(); ++v)
          if (v != drop) face[w++] = s[v];
        if (!std::binary_search(below.begin(), below.end(), face)) {
          std::ostringstream os;
          os << "complex: not downward closed: " << tuple_to_string(s) << " is missing face "
             << tuple_to_string(face);
          throw ValidationError(os.str());
        }
      }
    }
  }
}

NerveResult build_nerve(const MetricMeasureSpace& space, const Packing& packing, int dmax,
                        int multiplicity_cap, int threads) {
  if (dmax < 1) throw ValidationError("build_nerve: dmax must be >= 1");
  if (multiplicity_cap < 1) throw ValidationError("build_nerve: multiplicity cap must be >= 1");
  const long long n_balls = packing.N();
  if (n_balls < 1) throw ValidationError("build_nerve: empty packing");

  const std::vector<std::vector<int>> witness = cover_witness_sets(space, packing, threads);

  NerveResult result;
  for (std::size_t x = 0; x < witness.size(); ++x) {
    const int s = static_cast<int>(witness[x].size());
    if (s > result.max_multiplicity) result.max_multiplicity = s;
  }
  for (std::size_t x = 0; x < witness.size(); ++x) {
    if (static_cast<int>(witness[x].size()) > multiplicity_cap) {
      std::ostringstream os;
      os << "build_nerve: multiplicity cap exceeded at sample point " << x << ": |S(x)| = "
         << witness[x].size() << " > cap " << multiplicity_cap;
      throw ResourceError(os.str());
    }
  }

  SimplicialComplex& complex = result.complex;
  complex.dmax = dmax;
  complex.simplices.resize(static_cast<std::size_t>(dmax) + 1);
  for (int j = 0; j < static_cast<int>(n_balls); ++j) complex.simplices[0].push_back({j});

  // Subset insertion with set semantics: the result does not depend on the
  // witness iteration order.
  std::vector<std::set<std::vector<int>>> found(static_cast<std::size_t>(dmax) + 1);
  std::vector<int> subset;
  for (const std::vector<int>& s : witness) {
    const int size_cap = std::min<int>(static_cast<int>(s.size()), dmax + 1);
    for (int k = 2; k <= size_cap; ++k) {
      // enumerate k-subsets of s in lex order
      std::vector<int> idx(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
      while (true) {
        subset.clear();
        for (int i = 0; i < k; ++i) subset.push_back(s[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        found[static_cast<std::size_t>(k) - 1].insert(subset);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == static_cast<int>(s.size()) - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
          idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i) - 1] + 1;
      }
    }
  }
  for (int d = 1; d <= dmax; ++d)
    complex.simplices[static_cast<std::size_t>(d)]
        .assign(found[static_cast<std::size_t>(d)].begin(), found[static_cast<std::size_t>(d)].end());

  validate_complex(complex);  // cheap, and guards the invariants downstream code relies on
  return result;
}

SimplexCountReport simplex_counts(const SimplicialComplex& complex) {
  SimplexCountReport rep;
  rep.t = complex.counts();
  const long long t0 = complex.t(0);
  const long long t1 = complex.t(1);
  rep.claim_t0_le_2t1_na = (t1 == 0);
  rep.claim_t0_le_2t1 = !rep.claim_t0_le_2t1_na && t0 <= 2 * t1;
  for (int d = 2; d <= complex.dmax; ++d) {
    rep.max_t_ge2 = std::max(rep.max_t_ge2, complex.t(d));
    if (complex.t(d) > t1) rep.claim_ti_le_t1 = false;
  }
  return rep;
}

std::string complex_to_string(const SimplicialComplex& complex) {
  std::string out = std::to_string(complex.dmax);
  for (int d = 0; d <= complex.dmax; ++d) {
    out += ' ';
    out += std::to_string(complex.t(d));
  }
  out += '\n';
  for (int d = 0; d <= complex.dmax; ++d) {
    for (const std::vector<int>& s : complex.simplices[static_cast<std::size_t>(d)]) {
      for (std::size_t v = 0; v < s.size(); ++v) {
        if (v) out += ' ';
        out += std::to_string(s[v]);
      }
      out += '\n';
    }
  }
  return out;
}

void write_complex(const SimplicialComplex& complex, const std::string& path) {
  const std::string out = complex_to_string(complex);
  std::ofstream f(path, std::ios::binary);
  if (!f || !f.write(out.data(), static_cast<std::streamsize>(out.size())))
    throw ValidationError(path + ": cannot write file");
}

SimplicialComplex read_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");

  auto fail = [&path](long long line, const std::string& msg) -> void {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw ValidationError(os.str());
  };

  std::string s;
  long long line = 0;
  std::vector<long long> header;
  while (std::getline(in, s)) {
    ++line;
    std::istringstream is(s);
    long long v;
    while (is >> v) header.push_back(v);
    if (!is.eof()) fail(line, "malformed header integer");
    if (!header.empty()) break;
  }
  if (header.empty()) fail(line, "missing header line 'dmax t_0 ... t_dmax'");
  const long long dmax = header[0];
  if (dmax < 0 || dmax > 32) fail(line, "invalid dmax in header");
  if (static_cast<long long>(header.size()) != dmax + 2)
    fail(line, "header must carry exactly dmax+1 simplex counts");

  SimplicialComplex complex;
  complex.dmax = static_cast<int>(dmax);
  complex.simplices.resize(static_cast<std::size_t>(dmax) + 1);
  std::vector<std::vector<long long>> line_of(static_cast<std::size_t>(dmax) + 1);
  const long long t0 = header[1];
  if (t0 < 0 || t0 > 10000000) fail(line, "invalid t_0 in header");

  long long total = 0;
  for (long long d = 0; d <= dmax; ++d) {
    if (header[static_cast<std::size_t>(d) + 1] < 0) fail(line, "negative simplex count in header");
    total += header[static_cast<std::size_t>(d) + 1];
  }

  long long seen = 0;
  while (std::getline(in, s)) {
    ++line;
    std::istringstream is(s);
    std::vector<int> tup;
    long long v;
    while (is >> v) {
      if (v < 0 || v >= t0) fail(line, "vertex id " + std::to_string(v) + " out of range");
      tup.push_back(static_cast<int>(v));
    }
    if (!is.eof()) fail(line, "malformed vertex id");
    if (tup.empty()) continue;  // blank line
    const long long d = static_cast<long long>(tup.size()) - 1;
    if (d > dmax) fail(line, "simplex dimension exceeds header dmax");
    for (std::size_t i = 1; i < tup.size(); ++i)
      if (tup[i] <= tup[i - 1]) fail(line, "vertex ids must be strictly increasing");
    complex.simplices[static_cast<std::size_t>(d)].push_back(tup);
    line_of[static_cast<std::size_t>(d)].push_back(line);
    ++seen;
  }
  if (seen != total) {
    std::ostringstream os;
    os << "expected " << total << " simplex lines per the header, got " << seen;
    fail(line, os.str());
  }

  for (long long d = 0; d <= dmax; ++d) {
    auto& level = complex.simplices[static_cast<std::size_t>(d)];
    auto& lines = line_of[static_cast<std::size_t>(d)];
    if (static_cast<long long>(level.size()) != header[static_cast<std::size_t>(d) + 1]) {
      std::ostringstream os;
      os << "dimension " << d << " has " << level.size() << " simplices, header declares "
         << header[static_cast<std::size_t>(d) + 1];
      fail(line, os.str());
    }
    // sort tuples (keeping their source lines) and reject duplicates
    std::vector<std::size_t> order(level.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&level](std::size_t a, std::size_t b) { return level[a] < level[b]; });
    std::vector<std::vector<int>> sorted;
    std::vector<long long> sorted_lines;
    sorted.reserve(level.size());
    for (const std::size_t i : order) {
      if (!sorted.empty() && sorted.back() == level[i])
        fail(lines[i], "duplicate simplex " + tuple_to_string(level[i]));
      sorted.push_back(level[i]);
      sorted_lines.push_back(lines[i]);
    }
    level = std::move(sorted);
    lines = std::move(sorted_lines);
  }
  for (long long v = 0; v < t0; ++v) {
    if (complex.simplices[0][static_cast<std::size_t>(v)] != std::vector<int>{static_cast<int>(v)})
      fail(line, "0-simplices must enumerate exactly 0.." + std::to_string(t0 - 1));
  }

  // Downward closure with the offending line in the message.
  for (long long d = 1; d <= dmax; ++d) {
    const auto& level = complex.simplices[static_cast<std::size_t>(d)];
    const auto& below = complex.simplices[static_cast<std::size_t>(d) - 1];
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::vector<int>& tup = level[i];
      std::vector<int> face(tup.size() - 1);
      for (std::size_t drop = 0; drop < tup.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t v = 0; v < tup.size(); ++v)
          if (v != drop) face[w++] = tup[v];
        if (!std::binary_search(below.begin(), below.end(), face)) {
          fail(line_of[static_cast<std::size_t>(d)][i],
               "not downward closed: simplex " + tuple_to_string(tup) + " is missing face " +
                   tuple_to_string(face));
        }
      }
    }
  }
  return complex;
}

}  // namespace embolic
