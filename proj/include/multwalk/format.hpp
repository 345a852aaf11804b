#pragma once

#include <cstdio>
#include <string>

namespace multwalk {

// Shortest-faithful decimal for a double (17 significant digits, '.' decimal
// separator regardless of locale).
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt_sig(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

}  // namespace multwalk
