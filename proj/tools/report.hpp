#pragma once

#include <string>

#include "json.hpp"

namespace thhkit::cli {

using Json = nlohmann::ordered_json;

// Text form of a report: one "key: value" line per scalar, nested objects
// indented, arrays of objects as "- " items. Both forms come from the same
// Json value, so they carry the same fields.
inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

inline bool is_flat(const Json& arr) {
  for (const auto& x : arr)
    if (x.is_structured()) return false;
  return true;
}

inline void render_object(const Json& obj, int indent, std::string& out);

inline void render_field(const std::string& key, const Json& v, int indent, std::string& out, bool bullet = false) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string lead = bullet ? pad.substr(0, pad.size() - 2) + "- " : pad;
  if (!v.is_structured()) {
    out += lead + key + ": " + scalar_text(v) + "\n";
  } else if (v.is_array() && is_flat(v)) {
    std::string line;
    for (const auto& x : v) line += (line.empty() ? "" : ", ") + scalar_text(x);
    out += lead + key + ": " + (v.empty() ? "(none)" : line) + "\n";
  } else if (v.is_array()) {
    out += lead + key + ":" + (v.empty() ? " (none)" : "") + "\n";
    for (const auto& item : v) {
      if (item.is_object()) {
        bool first = true;
        for (const auto& [k, x] : item.items()) {
          render_field(k, x, indent + 4, out, first);
          first = false;
        }
        if (item.empty()) out += pad + "  - {}\n";
      } else {
        out += pad + "  - " + scalar_text(item) + "\n";
      }
    }
  } else {
    out += lead + key + ":\n";
    render_object(v, indent + 2, out);
  }
}

inline void render_object(const Json& obj, int indent, std::string& out) {
  for (const auto& [k, v] : obj.items()) render_field(k, v, indent, out);
}

inline std::string render_text(const Json& report) {
  std::string out;
  render_object(report, 0, out);
  return out;
}

}  // namespace thhkit::cli
