#pragma once

#include <charconv>
#include <cstdio>
#include <string>

#include "motionlab/point.hpp"

namespace motionlab {

/// 17 significant digits: exact double round-trip, used in every file format.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Shortest representation that round-trips; used for values printed to the terminal.
inline std::string shortest(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// λ in the `a+bi` form accepted by the CLI.
inline std::string lambda_label(Point z) {
  std::string im = shortest(z.imag());
  if (im.front() != '-') im = "+" + im;
  return shortest(z.real()) + im + "i";
}

}  // namespace motionlab
