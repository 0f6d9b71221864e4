#pragma once

#include <cstdio>
#include <string>

namespace lbentropy {

/// Round-trip precision (17 significant digits) for machine-readable output.
inline std::string full_precision(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Four decimals, for human-readable summaries.
inline std::string four_decimals(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace lbentropy
