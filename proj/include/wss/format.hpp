#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace wss {

/// Locale-independent, run-to-run stable rendering of a real number.
/// `digits` significant digits in %g style; infinities print as inf / -inf.
inline std::string format_real(double x, int digits = 17) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace wss
