#pragma once

#include <cstdio>
#include <string>

namespace degest {

/// RFC-4180 field quoting: fields containing commas, quotes or newlines are
/// wrapped in double quotes with inner quotes doubled.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Fixed numeric rendering so identical runs serialize identically.
inline std::string fmt_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace degest
