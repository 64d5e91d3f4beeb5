#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace alekit {

// RFC 4180 field quoting: only fields containing a separator, quote or line
// break get wrapped, with embedded quotes doubled.
inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Round-trip decimal rendering shared by every emitter (CSV cells, JSON
// numbers, the exec wire format): up to 17 significant digits, which pins the
// exact double on re-parse, with negative zero folded to "0" so equal values
// always render equally.
inline std::string format_double(double x) {
  if (x != x || x == 1.0 / 0.0 || x == -1.0 / 0.0)
    throw std::invalid_argument("cannot render non-finite value");
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace alekit
