#include "meta.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "embolic/errors.hpp"

namespace embolic {

void write_meta(const std::string& path, const std::string& generator,
                const MetricMeasureSpace& space, const std::vector<long long>& betti) {
  nlohmann::ordered_json doc;
  doc["generator"] = generator;
  doc["m"] = space.point_count();
  doc["n"] = space.dim();
  doc["inj"] = space.inj();
  doc["vol"] = space.total_volume();
  doc["betti"] = betti;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("meta: cannot open '" + path + "' for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw ValidationError("meta: write failed for '" + path + "'");
}

std::vector<long long> read_truth(const std::string& arg) {
  if (arg.empty()) throw ValidationError("truth: empty argument");

  const bool inline_list = arg.find_first_not_of("0123456789,") == std::string::npos;
  if (inline_list) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
      const std::size_t next = arg.find(',', pos);
      const std::string item =
          arg.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (item.empty()) throw ValidationError("truth: empty entry in list '" + arg + "'");
      out.push_back(std::stoll(item));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return out;
  }

  std::ifstream in(arg, std::ios::binary);
  if (!in) throw ValidationError("truth: cannot open '" + arg + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("truth: '" + arg + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("betti") || !doc["betti"].is_array())
    throw ValidationError("truth: '" + arg + "' has no \"betti\" array");
  std::vector<long long> out;
  for (const auto& v : doc["betti"]) {
    if (!v.is_number_integer())
      throw ValidationError("truth: non-integer Betti entry in '" + arg + "'");
    out.push_back(v.get<long long>());
  }
  return out;
}

std::string meta_path_for(const std::string& out_path) {
  const std::size_t slash = out_path.find_last_of("/\\");
  const std::size_t dot = out_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return out_path.substr(0, dot) + ".meta";
  return out_path + ".meta";
}

}  // namespace embolic
