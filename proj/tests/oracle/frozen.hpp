#pragma once

// The committed oracle values and the library's answers for the same
// fixtures, rendered the same way.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "thhkit/dga.hpp"
#include "thhkit/format.hpp"
#include "thhkit/hochschild.hpp"

namespace oracle {

struct FrozenRow {
  int cap = 0;
  std::vector<std::string> values;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(' '), e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::map<std::string, FrozenRow> read_frozen(const std::string& path) {
  std::map<std::string, FrozenRow> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto a = line.find('|'), b = line.find('|', a + 1);
    FrozenRow row;
    row.cap = std::stoi(line.substr(a + 1, b - a - 1));
    std::stringstream vs(line.substr(b + 1));
    std::string v;
    while (std::getline(vs, v, ';')) row.values.push_back(trim(v));
    out[trim(line.substr(0, a))] = row;
  }
  return out;
}

inline std::vector<std::string> strings(const thhkit::GradedModuleResult& r) {
  std::vector<std::string> out;
  for (const auto& v : r.values) out.push_back(v.to_string());
  return out;
}

/// Library answers keyed by route: "hh" or "hh-dga", plus "hh_over_Z" for
/// connected integral rings.
inline std::map<std::string, std::vector<std::string>> library_values(const std::string& path, int cap) {
  std::map<std::string, std::vector<std::string>> out;
  const thhkit::InputDocument doc = thhkit::read_document(path);
  if (doc.kind == thhkit::DocKind::Dga) {
    out["hh-dga"] = strings(thhkit::hh_dga(thhkit::build_dga(doc), cap));
    return out;
  }
  const thhkit::RingTable t = thhkit::build_table(doc);
  out["hh"] = strings(thhkit::hh(t, cap));
  if (t.ring().is_integers() && t.dimension(0) == 1) out["hh_over_Z"] = strings(thhkit::hh_over_Z(t, cap));
  return out;
}

}  // namespace oracle
