#include "embolic/space_io.hpp"

#include <bit>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "embolic/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary space files assume a little-endian host");

namespace embolic {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
constexpr std::uint64_t kMaxPoints = 100000;  // sanity bound on file-declared sizes

[[noreturn]] void fail(const std::string& path, long long line, const std::string& msg) {
  std::ostringstream os;
  os << path << ":";
  if (line > 0) os << line << ":";
  os << " " << msg;
  throw ValidationError(os.str());
}

// Splits a whitespace-separated line into doubles; rejects trailing garbage.
std::vector<double> parse_reals(const std::string& path, long long line, const std::string& s) {
  std::vector<double> out;
  const char* p = s.c_str();
  while (*p) {
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (!*p) break;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(p, &end);
    if (end == p || errno == ERANGE) fail(path, line, "malformed number near '" + std::string(p).substr(0, 16) + "'");
    out.push_back(v);
    p = end;
  }
  return out;
}

MetricMeasureSpace read_space_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::string s;
  long long line = 0;

  auto next_line = [&](const char* what) -> std::string {
    while (std::getline(in, s)) {
      ++line;
      // allow blank lines and comments between records
      std::size_t i = s.find_first_not_of(" \t\r");
      if (i == std::string::npos || s[i] == '#') continue;
      return s;
    }
    fail(path, line, std::string("unexpected end of file, expected ") + what);
  };

  const std::string header = next_line("header 'm n inj'");
  const long long header_line = line;
  const std::vector<double> head = parse_reals(path, header_line, header);
  if (head.size() != 3) fail(path, header_line, "header must be 'm n inj'");
  const double md = head[0], nd = head[1];
  if (md < 1 || md != static_cast<double>(static_cast<long long>(md)) || md > static_cast<double>(kMaxPoints))
    fail(path, header_line, "invalid point count m");
  if (nd < 1 || nd != static_cast<double>(static_cast<long long>(nd)) || nd > 64)
    fail(path, header_line, "invalid dimension n");
  const int m = static_cast<int>(md);
  const int n = static_cast<int>(nd);
  const double inj = head[2];

  const std::string weight_line = next_line("weight line");
  std::vector<double> w = parse_reals(path, line, weight_line);
  if (w.size() != static_cast<std::size_t>(m)) {
    std::ostringstream os;
    os << "expected " << m << " weights, got " << w.size();
    fail(path, line, os.str());
  }

  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    std::ostringstream what;
    what << "distance-matrix row " << i;
    const std::string row_line = next_line(what.str().c_str());
    const std::vector<double> rowv = parse_reals(path, line, row_line);
    if (rowv.size() != static_cast<std::size_t>(m)) {
      std::ostringstream os;
      os << "expected " << m << " entries in matrix row " << i << ", got " << rowv.size();
      fail(path, line, os.str());
    }
    d.insert(d.end(), rowv.begin(), rowv.end());
  }

  try {
    return MetricMeasureSpace(n, inj, std::move(w), std::move(d));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

MetricMeasureSpace read_space_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError(path + ": bad magic bytes, not a binary space file");
  std::uint64_t m64 = 0, n64 = 0;
  double inj = 0.0;
  if (!in.read(reinterpret_cast<char*>(&m64), 8) || !in.read(reinterpret_cast<char*>(&n64), 8) ||
      !in.read(reinterpret_cast<char*>(&inj), 8))
    throw ValidationError(path + ": truncated binary header");
  if (m64 < 1 || m64 > kMaxPoints) throw ValidationError(path + ": invalid point count in binary header");
  if (n64 < 1 || n64 > 64) throw ValidationError(path + ": invalid dimension in binary header");
  const std::size_t m = static_cast<std::size_t>(m64);
  std::vector<double> w(m), d(m * m);
  if (!in.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(8 * m)))
    throw ValidationError(path + ": truncated weight block");
  if (!in.read(reinterpret_cast<char*>(d.data()), static_cast<std::streamsize>(8 * m * m)))
    throw ValidationError(path + ": truncated distance block");
  try {
    return MetricMeasureSpace(static_cast<int>(n64), inj, std::move(w), std::move(d));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

MetricMeasureSpace read_space(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw ValidationError(path + ": cannot open file");
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  probe.close();
  if (std::memcmp(magic, kMagic, 4) == 0) return read_space_binary(path);
  return read_space_text(path);
}

void write_space_text(const MetricMeasureSpace& space, const std::string& path) {
  const int m = space.point_count();
  std::string out;
  out.reserve(static_cast<std::size_t>(m) * m * 20 + 64);
  out += std::to_string(m);
  out += ' ';
  out += std::to_string(space.dim());
  out += ' ';
  append_real(out, space.inj());
  out += '\n';
  for (int i = 0; i < m; ++i) {
    if (i) out += ' ';
    append_real(out, space.weight(i));
  }
  out += '\n';
  for (int i = 0; i < m; ++i) {
    const double* r = space.row(i);
    for (int j = 0; j < m; ++j) {
      if (j) out += ' ';
      append_real(out, r[j]);
    }
    out += '\n';
  }
  std::ofstream f(path, std::ios::binary);  // binary: keep "\n" endings exact
  if (!f || !f.write(out.data(), static_cast<std::streamsize>(out.size())))
    throw ValidationError(path + ": cannot write file");
}

void write_space_binary(const MetricMeasureSpace& space, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError(path + ": cannot write file");
  const std::uint64_t m = static_cast<std::uint64_t>(space.point_count());
  const std::uint64_t n = static_cast<std::uint64_t>(space.dim());
  const double inj = space.inj();
  f.write(kMagic, 4);
  f.write(reinterpret_cast<const char*>(&m), 8);
  f.write(reinterpret_cast<const char*>(&n), 8);
  f.write(reinterpret_cast<const char*>(&inj), 8);
  f.write(reinterpret_cast<const char*>(space.weights().data()),
          static_cast<std::streamsize>(8 * m));
  f.write(reinterpret_cast<const char*>(space.dist_matrix().data()),
          static_cast<std::streamsize>(8 * m * m));
  if (!f) throw ValidationError(path + ": cannot write file");
}

}  // namespace embolic
